from __future__ import annotations

import csv
from typing import IO, Iterable, List, Optional

import numpy as np
import tqdm
from flax import struct

from dna_reader.assembler import RunLimits, RunStats, process_stream
from dna_reader.common.sequence import KmerParams
from dna_reader.data.debruijn import KEEP_FIRST
from dna_reader.genes import CodonConfig, Gene
from dna_reader.simulate.genome import ShredSpec, random_genome, shred

CSV_HEADER = ('n_genes', 'elapsed_ms', 'nodes', 'reads', 'table_bytes')
# Large enough that a bench run is only ever stopped by its gene budget
NO_TIME_LIMIT_MS = 10**12


class BenchRow(struct.PyTreeNode):
  n_genes: int = struct.field(pytree_node=False)
  elapsed_ms: float = struct.field(pytree_node=False)
  nodes: int = struct.field(pytree_node=False)
  reads: int = struct.field(pytree_node=False)
  table_bytes: int = struct.field(pytree_node=False)
  genes_found: int = struct.field(pytree_node=False, default=0)

  def as_csv(self) -> List[str]:
    return [
        str(self.n_genes),
        f'{self.elapsed_ms:.1f}',
        str(self.nodes),
        str(self.reads),
        str(self.table_bytes),
    ]


class _Discard():

  def gene(self, gene: Gene) -> None:
    pass

  def summary(self, stats: RunStats) -> None:
    pass


def bench(n_genes_list: Iterable[int],
          genome_length: int,
          spec: ShredSpec,
          params: KmerParams,
          codons: CodonConfig,
          repeats: int = 1,
          conflict_policy: str = KEEP_FIRST,
          traversal_interval: int = 1,
          tensorboard_dir: Optional[str] = None,
          ) -> List[BenchRow]:
  """
  Time on-line runs over one shredded synthetic genome, one run per requested
  gene count.

  Parameters
  ----------
  n_genes_list : Iterable[int]
      Gene budgets, one row each
  genome_length : int
  spec : ShredSpec
      Shredding parameters. spec.seed seeds the genome.
  params : KmerParams
  codons : CodonConfig
  repeats : int, optional
      Runs per budget; the row reports the median elapsed time, by default 1
  conflict_policy : str, optional
  traversal_interval : int, optional
  tensorboard_dir : Optional[str], optional
      If set, each row is also written as tensorboard scalars, stepped by
      the gene budget, by default None

  Returns
  -------
  List[BenchRow]
  """
  genome = random_genome(genome_length, spec.seed)
  reads = shred(genome, spec)

  writer = None
  if tensorboard_dir is not None:
    from flax.metrics import tensorboard
    writer = tensorboard.SummaryWriter(tensorboard_dir)

  rows = []
  for n_genes in tqdm.tqdm(list(n_genes_list), desc='bench', leave=False):
    limits = RunLimits.create(max_genes=n_genes, time_limit_ms=NO_TIME_LIMIT_MS)
    runs = [
        process_stream(
            reads, params, codons, limits, _Discard(),
            conflict_policy=conflict_policy,
            traversal_interval=traversal_interval,
        )
        for _ in range(repeats)
    ]
    stats = runs[-1]
    row = BenchRow(
        n_genes=n_genes,
        elapsed_ms=float(np.median([r.elapsed_ms for r in runs])),
        nodes=stats.nodes,
        reads=stats.reads_processed,
        table_bytes=stats.table_bytes,
        genes_found=stats.genes_found,
    )
    rows.append(row)
    if writer is not None:
      writer.scalar('bench/elapsed_ms', row.elapsed_ms, n_genes)
      writer.scalar('bench/nodes', row.nodes, n_genes)
      writer.scalar('bench/reads', row.reads, n_genes)
      writer.scalar('bench/table_bytes', row.table_bytes, n_genes)

  if writer is not None:
    writer.flush()
  return rows


def write_rows(rows: Iterable[BenchRow], stream: IO[str]) -> None:
  out = csv.writer(stream, lineterminator='\n')
  out.writerow(CSV_HEADER)
  for row in rows:
    out.writerow(row.as_csv())
