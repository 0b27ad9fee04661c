from __future__ import annotations

import logging
import time
from typing import Iterable, List, Optional, Protocol, Tuple

from flax import struct

from dna_reader.common.sequence import (KmerParams, Read, kmer_to_edge, kmers,
                                        normalize)
from dna_reader.data.debruijn import KEEP_FIRST, DeBruijnGraph
from dna_reader.genes import CodonConfig, Gene, GeneRegistry, extract_genes
from dna_reader.io.reads import ReadSourceError

logger = logging.getLogger(__name__)


class Strand(struct.PyTreeNode):
  """A partially assembled strand spelled from a successor chain."""
  text: str = struct.field(pytree_node=False)
  origin: int = struct.field(pytree_node=False)


class RunLimits(struct.PyTreeNode):
  max_genes: int = struct.field(pytree_node=False)
  time_limit_ms: int = struct.field(pytree_node=False)

  @classmethod
  def create(cls, max_genes: int, time_limit_ms: int) -> RunLimits:
    if max_genes < 1:
      raise ValueError(f'max_genes must be positive, got {max_genes}')
    if time_limit_ms < 0:
      raise ValueError(
          f'time_limit_ms must be non-negative, got {time_limit_ms}'
      )
    return cls(max_genes=int(max_genes), time_limit_ms=int(time_limit_ms))


class RunStats(struct.PyTreeNode):
  reads_processed: int = struct.field(pytree_node=False)
  nodes: int = struct.field(pytree_node=False)
  genes_found: int = struct.field(pytree_node=False)
  elapsed_ms: float = struct.field(pytree_node=False)
  bases_processed: int = struct.field(pytree_node=False, default=0)
  passes: int = struct.field(pytree_node=False, default=0)
  table_bytes: int = struct.field(pytree_node=False, default=0)

  @property
  def average_read_length(self) -> float:
    if self.reads_processed == 0:
      return 0.0
    return self.bases_processed / self.reads_processed


class GeneSink(Protocol):
  """Consumer of newly found genes and of the final run summary."""

  def gene(self, gene: Gene) -> None:
    ...

  def summary(self, stats: RunStats) -> None:
    ...


##############################
# Graph update and traversal
##############################
def ingest_read(graph: DeBruijnGraph, read: Read, params: KmerParams) -> int:
  """
  Add every k-mer of read to the graph as an edge between its (k-1)-mers.

  Returns
  -------
  int
      Number of k-mers processed, max(0, L - k + 1)
  """
  windows = kmers(read, params)
  for kmer in windows:
    left, right = kmer_to_edge(kmer, params)
    graph.add_edge(graph.intern(left), graph.intern(right))
  return len(windows)


def spell(graph: DeBruijnGraph, path: List[int]) -> str:
  mers = graph.index.mers
  head = mers[path[0]]
  return head + ''.join([mers[i][-1] for i in path[1:]])


def traversal_pass(graph: DeBruijnGraph) -> Tuple[List[Strand], int]:
  """
  Walk from every initial node and spell the strands.

  Returns
  -------
  Tuple[List[Strand], int]
      Strands in ascending initial-index order, and the number of nodes
      visited across all walks
  """
  successors = graph.successors()
  strands = []
  visited = 0
  for start in graph.initials():
    path = graph.walk_from(start, successors)
    visited += len(path)
    strands.append(Strand(text=spell(graph, path), origin=start))
  return strands, visited


def assemble_strands(graph: DeBruijnGraph, params: KmerParams) -> List[Strand]:
  return traversal_pass(graph)[0]


##############################
# On-line processing loop
##############################
class OnlineAssembler():

  def __init__(self,
               params: KmerParams,
               codons: CodonConfig,
               conflict_policy: str = KEEP_FIRST,
               traversal_interval: int = 1,
               ):
    """
    State of one on-line run: the graph, the registry of reported genes and
    the read counters.

    Parameters
    ----------
    params : KmerParams
    codons : CodonConfig
    conflict_policy : str, optional
        Passed on to DeBruijnGraph, by default 'keep-first'
    traversal_interval : int, optional
        Traverse the graph and extract genes every this many reads, by
        default 1 (after every read)
    """
    if traversal_interval < 1:
      raise ValueError(
          f'traversal_interval must be positive, got {traversal_interval}'
      )
    self.params = params
    self.codons = codons
    self.traversal_interval = traversal_interval
    self.graph = DeBruijnGraph(conflict_policy=conflict_policy)
    self.registry = GeneRegistry()
    self.reads_processed = 0
    self.bases_processed = 0
    self.passes = 0
    self.pending_reads = 0

  def add_read(self, read: Read, sink: Optional[GeneSink] = None) -> int:
    """
    Ingest one read and, when the traversal interval is reached, run a pass.

    Returns
    -------
    int
        Number of genes newly registered by this call
    """
    ingest_read(self.graph, read, self.params)
    self.reads_processed += 1
    self.bases_processed += read.length
    self.pending_reads += 1
    if self.pending_reads >= self.traversal_interval:
      return self.run_pass(sink)
    return 0

  def run_pass(self, sink: Optional[GeneSink] = None) -> int:
    strands, visited = traversal_pass(self.graph)
    new_genes = 0
    for strand in strands:
      for gene in extract_genes(strand.text, self.codons):
        if self.registry.register(gene):
          new_genes += 1
          if sink is not None:
            sink.gene(gene)
    self.passes += 1
    self.pending_reads = 0
    logger.debug(
        'pass %d: %d nodes, %d strands, %d visited, %d new genes',
        self.passes, self.graph.node_count, len(strands), visited, new_genes
    )
    return new_genes

  def stats(self, elapsed_ms: float) -> RunStats:
    return RunStats(
        reads_processed=self.reads_processed,
        nodes=self.graph.node_count,
        genes_found=len(self.registry),
        elapsed_ms=elapsed_ms,
        bases_processed=self.bases_processed,
        passes=self.passes,
        table_bytes=self.graph.table_bytes,
    )


def process_stream(source: Iterable[str],
                   params: KmerParams,
                   codons: CodonConfig,
                   limits: RunLimits,
                   sink: GeneSink,
                   conflict_policy: str = KEEP_FIRST,
                   traversal_interval: int = 1,
                   ) -> RunStats:
  """
  Process raw read texts one at a time, reporting genes as they are found.

  The gene budget and the time limit are checked between reads only, so a
  pass that crosses the gene budget still reports every gene it found. The
  run also ends when the source is exhausted. The summary is sent to the sink
  in every case.

  Parameters
  ----------
  source : Iterable[str]
      Raw read texts in arrival order. Consumed lazily.
  params : KmerParams
  codons : CodonConfig
  limits : RunLimits
  sink : GeneSink
  conflict_policy : str, optional
      By default 'keep-first'
  traversal_interval : int, optional
      By default 1

  Returns
  -------
  RunStats

  Raises
  ------
  ReadSourceError
      When reading from the source fails. Raised after the summary of the
      completed work has been emitted.
  OSError
      Raised by the sink, unchanged and without a summary.
  """
  start_time = time.perf_counter()

  def elapsed_ms() -> float:
    return (time.perf_counter() - start_time) * 1e3

  def budget_spent() -> bool:
    return (len(assembler.registry) >= limits.max_genes
            or elapsed_ms() >= limits.time_limit_ms)

  assembler = OnlineAssembler(
      params=params,
      codons=codons,
      conflict_policy=conflict_policy,
      traversal_interval=traversal_interval,
  )
  failure = None
  exhausted = False
  raw_reads = iter(source)
  try:
    # Both budgets are monotone: once spent they stay spent
    while not budget_spent():
      try:
        raw = next(raw_reads, None)
      except OSError as e:
        # Only pulling from the source is guarded; sink errors propagate
        failure = e
        break
      if raw is None:
        exhausted = True
        break
      for read in normalize(raw):
        if budget_spent():
          break
        assembler.add_read(read, sink)
  finally:
    close = getattr(raw_reads, 'close', None)
    if close is not None:
      close()

  if exhausted and assembler.pending_reads > 0:
    # Reads ingested since the last pass when traversal_interval > 1
    assembler.run_pass(sink)

  stats = assembler.stats(elapsed_ms())
  logger.info(
      'reads=%d nodes=%d genes=%d passes=%d table_bytes=%d',
      stats.reads_processed, stats.nodes, stats.genes_found, stats.passes,
      stats.table_bytes
  )
  sink.summary(stats)
  if failure is not None:
    if isinstance(failure, ReadSourceError):
      raise failure
    raise ReadSourceError(str(failure)) from failure
  return stats
