from __future__ import annotations

import re
from bisect import bisect_left
from functools import lru_cache
from typing import FrozenSet, Iterable, List, Set

from flax import struct

from dna_reader.common.sequence import ALPHABET

DEFAULT_STARTS = ('ATG',)
DEFAULT_STOPS = ('TGA', 'TAA', 'TAG')
CODON_LENGTH = 3


class CodonError(ValueError):
  """A codon token that is not three bases over {A, C, G, T}."""

  def __init__(self, token: str):
    super().__init__(f'Invalid codon: {token!r}')
    self.token = token


def parse_codon(token: str) -> str:
  codon = token.strip().upper()
  if len(codon) != CODON_LENGTH or any(c not in ALPHABET for c in codon):
    raise CodonError(token)
  return codon


class CodonConfig(struct.PyTreeNode):
  starts: FrozenSet[str] = struct.field(pytree_node=False)
  stops: FrozenSet[str] = struct.field(pytree_node=False)
  # Require the stop to lie in the reading frame of the start
  enforce_frame: bool = struct.field(pytree_node=False, default=False)

  @classmethod
  def create(cls,
             starts: Iterable[str] = DEFAULT_STARTS,
             stops: Iterable[str] = DEFAULT_STOPS,
             enforce_frame: bool = False,
             ) -> CodonConfig:
    starts = frozenset(parse_codon(c) for c in starts)
    stops = frozenset(parse_codon(c) for c in stops)
    if not starts or not stops:
      raise ValueError('At least one start and one stop codon are required')
    if starts & stops:
      raise ValueError(
          f'Codons cannot be both start and stop: {sorted(starts & stops)}'
      )
    return cls(starts=starts, stops=stops, enforce_frame=bool(enforce_frame))


class Gene(struct.PyTreeNode):
  # Uppercase; identity is case-insensitive
  text: str = struct.field(pytree_node=False)

  @classmethod
  def create(cls, text: str, codons: CodonConfig) -> Gene:
    text = text.upper()
    if len(text) < 2 * CODON_LENGTH:
      raise ValueError(f'Gene {text!r} is shorter than two codons')
    if text[:CODON_LENGTH] not in codons.starts:
      raise ValueError(f'Gene {text!r} does not begin with a start codon')
    if text[-CODON_LENGTH:] not in codons.stops:
      raise ValueError(f'Gene {text!r} does not end with a stop codon')
    return cls(text=text)


class GeneRegistry():
  """
  Set of already reported genes, plus the order in which they were found.
  """

  def __init__(self):
    self.seen: Set[str] = set()
    self.found: List[str] = []

  def __len__(self) -> int:
    return len(self.seen)

  def __contains__(self, gene: Gene) -> bool:
    return gene.text.upper() in self.seen

  def register(self, gene: Gene) -> bool:
    text = gene.text.upper()
    if text in self.seen:
      return False
    self.seen.add(text)
    self.found.append(text)
    return True


@lru_cache(maxsize=64)
def _codon_pattern(codons: FrozenSet[str]) -> re.Pattern:
  # Zero-width lookahead so overlapping occurrences are all reported
  alternatives = '|'.join(sorted(codons))
  return re.compile(f'(?=(?:{alternatives}))')


def scan_codons(strand_text: str, codons: Iterable[str]) -> List[int]:
  """
  Positions (ascending) of every 3-base window of strand_text found in codons.
  """
  codons = frozenset(codons)
  if not codons or len(strand_text) < CODON_LENGTH:
    return []
  pattern = _codon_pattern(codons)
  return [m.start() for m in pattern.finditer(strand_text)]


def _next_stop(stops: List[int], start: int, enforce_frame: bool) -> int:
  """Index into stops of the first eligible stop for start, or len(stops)."""
  j = bisect_left(stops, start + CODON_LENGTH)
  if enforce_frame:
    while j < len(stops) and (stops[j] - start) % CODON_LENGTH != 0:
      j += 1
  return j


def extract_genes(strand_text: str, config: CodonConfig) -> List[Gene]:
  """
  Greedy gene extraction.

  The earliest start codon is matched with the earliest stop codon that
  begins at least one codon after it. Start codons in between are dropped, so
  every gene is the largest one ending at its stop. Scanning resumes right
  after the stop codon.

  Parameters
  ----------
  strand_text : str
      Uppercase nucleotide text
  config : CodonConfig

  Returns
  -------
  List[Gene]
      Non-overlapping genes in ascending position order
  """
  starts = scan_codons(strand_text, config.starts)
  if not starts:
    return []
  stops = scan_codons(strand_text, config.stops)
  if not stops:
    return []

  genes = []
  position = 0
  si = 0
  while True:
    while si < len(starts) and starts[si] < position:
      si += 1
    if si == len(starts):
      break
    start = starts[si]
    j = _next_stop(stops, start, config.enforce_frame)
    if j == len(stops):
      if not config.enforce_frame:
        break
      # Another start may still have an in-frame stop
      si += 1
      continue
    end = stops[j] + CODON_LENGTH
    genes.append(Gene(text=strand_text[start:end]))
    position = end
  return genes
