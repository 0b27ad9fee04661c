import logging
import sys
from typing import IO, List, Optional, Sequence

import tqdm

from dna_reader.assembler import RunLimits, process_stream
from dna_reader.io.cli import (UsageError, parse_args, parse_bench_args,
                               parse_gen_args)
from dna_reader.io.prompt import prompt_codons
from dna_reader.io.reads import open_read_source
from dna_reader.io.report import StdoutSink
from dna_reader.simulate.bench import bench, write_rows
from dna_reader.simulate.genome import ShredSpec, random_genome, shred


def _setup_logging(verbose: bool) -> None:
  logging.basicConfig(
      level=logging.INFO if verbose else logging.WARNING,
      format='[%(name)s] %(message)s',
      stream=sys.stderr,
      force=True,
  )


def run(argv: Sequence[str]) -> int:
  config = parse_args(argv)
  _setup_logging(config.verbose)

  codons = config.codon_config()
  if config.custom_codons:
    # Questions go to stderr so stdout only ever holds genes and the summary
    codons = prompt_codons(sys.stdin, sys.stderr, defaults=codons)

  source = open_read_source(config.file)
  process_stream(
      source,
      params=config.kmer_params(),
      codons=codons,
      limits=RunLimits.create(config.n_genes, config.time_limit_ms),
      sink=StdoutSink(sys.stdout),
      conflict_policy=config.conflict_policy,
      traversal_interval=config.traversal_interval,
  )
  return 0


def write_reads(reads: List[str], stream: IO[str], fasta: bool) -> None:
  for i, read in enumerate(tqdm.tqdm(reads, desc='gen', leave=False)):
    if fasta:
      print(f'>read_{i}', file=stream)
    print(read, file=stream)


def gen(argv: Sequence[str]) -> int:
  config = parse_gen_args(argv)
  spec = ShredSpec.create(config.read_length, config.step, seed=config.seed)
  reads = shred(random_genome(config.length, config.seed), spec)
  if config.out is None or config.out == '-':
    write_reads(reads, sys.stdout, config.fasta)
  else:
    with open(config.out, 'w') as f:
      write_reads(reads, f, config.fasta)
  return 0


def run_bench(argv: Sequence[str]) -> int:
  config = parse_bench_args(argv)
  _setup_logging(verbose=False)
  spec = ShredSpec.create(config.read_length, config.step, seed=config.seed)
  rows = bench(
      config.genes,
      genome_length=config.length,
      spec=spec,
      params=config.kmer_params(),
      codons=config.codon_config(),
      repeats=config.repeats,
      conflict_policy=config.conflict_policy,
      traversal_interval=config.traversal_interval,
      tensorboard_dir=config.tensorboard_dir,
  )
  write_rows(rows, sys.stdout)
  return 0


SUBCOMMANDS = {'gen': gen, 'bench': run_bench}


def main(argv: Optional[Sequence[str]] = None) -> int:
  argv = list(sys.argv[1:] if argv is None else argv)
  command = SUBCOMMANDS.get(argv[0], run) if argv else run
  if command is not run:
    argv = argv[1:]
  try:
    return command(argv)
  except UsageError as e:
    print(e.usage, file=sys.stderr)
    return 2
  except (OSError, ValueError) as e:
    print(f'Error: {e}', file=sys.stderr)
    return 1


if __name__ == '__main__':
  sys.exit(main())
