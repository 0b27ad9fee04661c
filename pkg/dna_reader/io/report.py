import sys
from typing import IO, Optional

from dna_reader.assembler import RunStats
from dna_reader.genes import Gene


def format_gene(gene: Gene) -> str:
  return gene.text.lower()


def format_summary(stats: RunStats) -> str:
  return f'Found {stats.genes_found} fragments in {stats.elapsed_ms:.1f}ms'


class StdoutSink():
  """
  Prints each new gene on its own line as soon as it is found, then the
  summary line.
  """

  def __init__(self, stream: Optional[IO[str]] = None):
    self.stream = stream if stream is not None else sys.stdout

  def gene(self, gene: Gene) -> None:
    print(format_gene(gene), file=self.stream, flush=True)

  def summary(self, stats: RunStats) -> None:
    print(format_summary(stats), file=self.stream, flush=True)
