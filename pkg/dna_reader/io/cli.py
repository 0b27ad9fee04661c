from __future__ import annotations

import argparse
from typing import List, Optional, Sequence, Tuple

from flax import struct
from hydra import compose, initialize_config_module
from hydra.errors import HydraException
from omegaconf import DictConfig

from dna_reader.common.sequence import KmerParams
from dna_reader.data.debruijn import CONFLICT_POLICIES
from dna_reader.genes import CodonConfig

PROG = 'dna-reader'

USAGE = f"""\
Usage: {PROG} <file> <nGenes> <timeLimit> [ -c ] [--k N] [--interval R]
       [--policy keep-first|overwrite-last] [--frame] [--verbose]
<file>      name of the file that contains the readings ('-' for standard input)
<nGenes>    number of genes to be found
<timeLimit> maximum milliseconds of computation time
-c          allows the user to insert manually the start and stop codons
--k N       k-mer length (default 201)
--interval R  traverse the graph every R reads (default 1)
--policy P  edge conflict policy, keep-first or overwrite-last (default keep-first)
--frame     only accept stop codons in the reading frame of the start codon
--verbose   log node and gene counts to standard error

       {PROG} gen <length> <seed> [--out FILE] [--fasta] [--read-length L] [--step S]
       {PROG} bench <length> <seed> [--genes 15,30,45,60] [--repeats N]
       [--read-length L] [--step S] [--k N] [--tensorboard DIR]"""


class UsageError(ValueError):
  """Invalid command line. Carries the full usage text."""

  def __init__(self, message: str = ''):
    super().__init__(message)
    self.message = message
    self.usage = USAGE


class _Parser(argparse.ArgumentParser):

  def __init__(self, **kwargs):
    super().__init__(prog=PROG, add_help=False, allow_abbrev=False, **kwargs)

  def error(self, message: str):
    raise UsageError(message)


def _count(text: str) -> int:
  value = int(text)
  if value < 0:
    raise ValueError(text)
  return value


def _positive(text: str) -> int:
  value = int(text)
  if value < 1:
    raise ValueError(text)
  return value


def _gene_list(text: str) -> Tuple[int, ...]:
  return tuple(_positive(t) for t in text.split(',') if t.strip())


def load_config(overrides: Sequence[str] = ()) -> DictConfig:
  """
  Compose config.yaml with hydra, applying `key=value` overrides on top.
  """
  try:
    with initialize_config_module(config_module='dna_reader',
                                  version_base=None):
      return compose(config_name='config', overrides=list(overrides))
  except HydraException as e:
    raise UsageError(str(e)) from e


def _overrides(args: argparse.Namespace) -> List[str]:
  overrides = []
  for key, attr in (
      ('k', 'k'),
      ('traversal_interval', 'interval'),
      ('conflict_policy', 'policy'),
      ('simulate.read_length', 'read_length'),
      ('simulate.step', 'step'),
      ('bench.repeats', 'repeats'),
      ('bench.tensorboard_dir', 'tensorboard'),
  ):
    value = getattr(args, attr, None)
    if isinstance(value, str):
      # Quoted so paths and dashes pass the override grammar untouched
      overrides.append(f"{key}='{value}'")
    elif value is not None:
      overrides.append(f'{key}={value}')
  if getattr(args, 'frame', False):
    overrides.append('enforce_frame=true')
  if getattr(args, 'verbose', False):
    overrides.append('verbose=true')
  genes = getattr(args, 'genes', None)
  if genes is not None:
    overrides.append(f"bench.genes=[{','.join(str(g) for g in genes)}]")
  return overrides


def _add_assembly_flags(parser: argparse.ArgumentParser) -> None:
  parser.add_argument('--k', type=_positive, default=None)
  parser.add_argument('--interval', type=_positive, default=None)
  parser.add_argument('--policy', choices=CONFLICT_POLICIES, default=None)
  parser.add_argument('--frame', action='store_true')
  parser.add_argument('--verbose', action='store_true')


def _validate(cfg: DictConfig) -> None:
  try:
    KmerParams.create(cfg.k)
    CodonConfig.create(cfg.codons.starts, cfg.codons.stops)
  except ValueError as e:
    raise UsageError(str(e)) from e


##############################
# Main run
##############################
class CliConfig(struct.PyTreeNode):
  file: str = struct.field(pytree_node=False)
  n_genes: int = struct.field(pytree_node=False)
  time_limit_ms: int = struct.field(pytree_node=False)
  custom_codons: bool = struct.field(pytree_node=False, default=False)
  k: int = struct.field(pytree_node=False, default=201)
  traversal_interval: int = struct.field(pytree_node=False, default=1)
  conflict_policy: str = struct.field(pytree_node=False, default='keep-first')
  enforce_frame: bool = struct.field(pytree_node=False, default=False)
  verbose: bool = struct.field(pytree_node=False, default=False)
  starts: Tuple[str, ...] = struct.field(pytree_node=False, default=('ATG',))
  stops: Tuple[str, ...] = struct.field(
      pytree_node=False, default=('TGA', 'TAA', 'TAG')
  )

  def kmer_params(self) -> KmerParams:
    return KmerParams.create(self.k)

  def codon_config(self) -> CodonConfig:
    return CodonConfig.create(
        starts=self.starts, stops=self.stops, enforce_frame=self.enforce_frame
    )


def parse_args(argv: Sequence[str]) -> CliConfig:
  """
  Parse `<file> <nGenes> <timeLimit> [-c]` plus the optional flags.

  Raises
  ------
  UsageError
      On missing, malformed or unknown arguments
  """
  parser = _Parser()
  parser.add_argument('file')
  parser.add_argument('n_genes', type=_positive)
  parser.add_argument('time_limit_ms', type=_count)
  parser.add_argument('-c', dest='custom_codons', action='store_true')
  _add_assembly_flags(parser)
  args = parser.parse_args(list(argv))

  cfg = load_config(_overrides(args))
  _validate(cfg)
  return CliConfig(
      file=args.file,
      n_genes=args.n_genes,
      time_limit_ms=args.time_limit_ms,
      custom_codons=args.custom_codons,
      k=int(cfg.k),
      traversal_interval=int(cfg.traversal_interval),
      conflict_policy=str(cfg.conflict_policy),
      enforce_frame=bool(cfg.enforce_frame),
      verbose=bool(cfg.verbose),
      starts=tuple(cfg.codons.starts),
      stops=tuple(cfg.codons.stops),
  )


##############################
# Simulation subcommands
##############################
class GenConfig(struct.PyTreeNode):
  length: int = struct.field(pytree_node=False)
  seed: int = struct.field(pytree_node=False)
  read_length: int = struct.field(pytree_node=False)
  step: int = struct.field(pytree_node=False)
  out: Optional[str] = struct.field(pytree_node=False, default=None)
  fasta: bool = struct.field(pytree_node=False, default=False)


def parse_gen_args(argv: Sequence[str]) -> GenConfig:
  parser = _Parser()
  parser.add_argument('length', type=_positive)
  parser.add_argument('seed', type=int)
  parser.add_argument('--out', default=None)
  parser.add_argument('--fasta', action='store_true')
  parser.add_argument('--read-length', dest='read_length', type=_positive)
  parser.add_argument('--step', type=_positive)
  args = parser.parse_args(list(argv))

  cfg = load_config(_overrides(args))
  return GenConfig(
      length=args.length,
      seed=args.seed,
      read_length=int(cfg.simulate.read_length),
      step=int(cfg.simulate.step),
      out=args.out,
      fasta=args.fasta,
  )


class BenchConfig(struct.PyTreeNode):
  length: int = struct.field(pytree_node=False)
  seed: int = struct.field(pytree_node=False)
  genes: Tuple[int, ...] = struct.field(pytree_node=False)
  repeats: int = struct.field(pytree_node=False)
  read_length: int = struct.field(pytree_node=False)
  step: int = struct.field(pytree_node=False)
  k: int = struct.field(pytree_node=False)
  traversal_interval: int = struct.field(pytree_node=False)
  conflict_policy: str = struct.field(pytree_node=False)
  enforce_frame: bool = struct.field(pytree_node=False)
  starts: Tuple[str, ...] = struct.field(pytree_node=False)
  stops: Tuple[str, ...] = struct.field(pytree_node=False)
  tensorboard_dir: Optional[str] = struct.field(pytree_node=False, default=None)

  def kmer_params(self) -> KmerParams:
    return KmerParams.create(self.k)

  def codon_config(self) -> CodonConfig:
    return CodonConfig.create(
        starts=self.starts, stops=self.stops, enforce_frame=self.enforce_frame
    )


def parse_bench_args(argv: Sequence[str]) -> BenchConfig:
  parser = _Parser()
  parser.add_argument('length', type=_positive)
  parser.add_argument('seed', type=int)
  parser.add_argument('--genes', type=_gene_list, default=None)
  parser.add_argument('--repeats', type=_positive, default=None)
  parser.add_argument('--read-length', dest='read_length', type=_positive)
  parser.add_argument('--step', type=_positive)
  parser.add_argument('--tensorboard', default=None)
  _add_assembly_flags(parser)
  args = parser.parse_args(list(argv))

  cfg = load_config(_overrides(args))
  _validate(cfg)
  if not cfg.bench.genes:
    raise UsageError('--genes needs at least one count')
  return BenchConfig(
      length=args.length,
      seed=args.seed,
      genes=tuple(int(g) for g in cfg.bench.genes),
      repeats=int(cfg.bench.repeats),
      read_length=int(cfg.simulate.read_length),
      step=int(cfg.simulate.step),
      k=int(cfg.k),
      traversal_interval=int(cfg.traversal_interval),
      conflict_policy=str(cfg.conflict_policy),
      enforce_frame=bool(cfg.enforce_frame),
      starts=tuple(cfg.codons.starts),
      stops=tuple(cfg.codons.stops),
      tensorboard_dir=cfg.bench.tensorboard_dir,
  )
