from __future__ import annotations

from typing import List, Optional

import numpy as np
from flax import struct

from dna_reader.common.sequence import ALPHABET

_BASES = np.frombuffer(ALPHABET.encode('ascii'), dtype=np.uint8)


class ShredSpec(struct.PyTreeNode):
  """
  How a genome is cut into overlapping reads. Every k-mer of the genome ends
  up in some read if and only if step <= read_length - k + 1.
  """
  read_length: int = struct.field(pytree_node=False, default=400)
  step: int = struct.field(pytree_node=False, default=150)
  seed: Optional[int] = struct.field(pytree_node=False, default=None)

  @classmethod
  def create(cls,
             read_length: int = 400,
             step: int = 150,
             seed: Optional[int] = None,
             ) -> ShredSpec:
    if read_length < 1:
      raise ValueError(f'read_length must be positive, got {read_length}')
    if step < 1:
      raise ValueError(f'step must be positive, got {step}')
    return cls(read_length=int(read_length), step=int(step), seed=seed)

  def covers_kmers(self, k: int) -> bool:
    return self.step <= self.read_length - k + 1


def random_genome(length: int, seed: Optional[int] = None) -> str:
  """
  Uniform i.i.d. bases from a seeded generator. Same seed and length give the
  same genome.
  """
  if length < 1:
    raise ValueError(f'Genome length must be positive, got {length}')
  np_random = np.random.default_rng(seed=seed)
  codes = np_random.integers(low=0, high=len(ALPHABET), size=length)
  return _BASES[codes].tobytes().decode('ascii')


def shred_offsets(genome_length: int, spec: ShredSpec) -> List[int]:
  if spec.read_length >= genome_length:
    return [0]
  last = genome_length - spec.read_length
  offsets = list(range(0, last + 1, spec.step))
  # Tail read so the end of the genome is covered
  if offsets[-1] != last:
    offsets.append(last)
  return offsets


def shred(genome: str, spec: ShredSpec) -> List[str]:
  """
  Cut genome into reads of spec.read_length every spec.step bases.

  A final read ending at the genome end is added when the regular offsets do
  not reach it. A genome not longer than one read is returned whole.
  """
  size = spec.read_length
  return [genome[o:o+size] for o in shred_offsets(len(genome), spec)]


def has_distinct_kmers(genome: str, k: int) -> bool:
  num_kmers = len(genome) - k + 1
  return len({genome[i:i+k] for i in range(num_kmers)}) == max(num_kmers, 0)


def reconstructable_genome(length: int, k: int, seed: int,
                           max_attempts: int = 100) -> str:
  """
  A random genome whose k-mers and (k-1)-mers are all distinct, drawing new
  seeds (seed, seed+1, ...) until one qualifies.
  """
  for attempt in range(max_attempts):
    genome = random_genome(length, seed + attempt)
    if has_distinct_kmers(genome, k - 1):
      return genome
  raise ValueError(
      f'No genome of length {length} with distinct {k-1}-mers after '
      f'{max_attempts} attempts'
  )
