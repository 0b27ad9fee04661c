from __future__ import annotations

import re
from typing import List, Tuple

from flax import struct

ALPHABET = 'ACGT'
DEFAULT_K = 201

# Maximal runs of valid bases once the text has been uppercased
_VALID_RUN = re.compile(r'[ACGT]+')


class Read(struct.PyTreeNode):
  """
  A validated nucleotide segment over {A, C, G, T}. The unit of streaming
  input.
  """
  bases: str = struct.field(pytree_node=False)

  @classmethod
  def create(cls, bases: str) -> Read:
    if len(bases) == 0:
      raise ValueError('A read needs at least one base')
    if _VALID_RUN.fullmatch(bases) is None:
      raise ValueError(f'Read contains characters outside {ALPHABET}: {bases!r}')
    return cls(bases=bases)

  @property
  def length(self) -> int:
    return len(self.bases)

  def __len__(self) -> int:
    return len(self.bases)


class KmerParams(struct.PyTreeNode):
  k: int = struct.field(pytree_node=False, default=DEFAULT_K)

  @classmethod
  def create(cls, k: int = DEFAULT_K) -> KmerParams:
    # A (k-1)-mer must be non-empty and genes need whole codons downstream
    if int(k) != k or k < 3:
      raise ValueError(f'k must be an integer >= 3, got {k}')
    return cls(k=int(k))


def normalize(raw_text: str) -> List[Read]:
  """
  Split arbitrary text into reads.

  Letters are uppercased first; every character outside {A, C, G, T} then
  acts as a separator, and each maximal valid run becomes one read.

  Parameters
  ----------
  raw_text : str
      Text as it arrives from the read source

  Returns
  -------
  List[Read]
      Reads in their original order. Empty when the text holds no valid run.
  """
  return [
      Read(bases=run) for run in _VALID_RUN.findall(raw_text.upper())
  ]


def kmers(read: Read, params: KmerParams) -> List[str]:
  k = params.k
  bases = read.bases
  return [bases[i:i+k] for i in range(len(bases) - k + 1)]


def kmer_to_edge(kmer: str, params: KmerParams) -> Tuple[str, str]:
  """
  Split a k-mer into its left (prefix) and right (suffix) (k-1)-mers, which
  overlap in k-2 characters.
  """
  if len(kmer) != params.k:
    raise ValueError(
        f'k-mer {kmer!r} has length {len(kmer)}, expected {params.k}'
    )
  return kmer[:-1], kmer[1:]
