import re
from typing import IO, Callable, Optional, Tuple

from dna_reader.genes import CodonConfig, CodonError, parse_codon

START_PROMPT = 'Enter the initial codons separated by spaces:'
STOP_PROMPT = 'Enter the final codons separated by spaces:'

_SEPARATORS = re.compile(r'[\s,]+')


def _ask(prompt: str,
         default: Tuple[str, ...],
         stdin: IO[str],
         stdout: IO[str],
         check: Optional[Callable[[Tuple[str, ...]], Optional[str]]] = None,
         ) -> Tuple[str, ...]:
  while True:
    print(prompt, file=stdout, flush=True)
    line = stdin.readline()
    tokens = [t for t in _SEPARATORS.split(line.strip()) if t]
    try:
      # Empty answer keeps the defaults
      codons = tuple(parse_codon(t) for t in tokens) if tokens else default
    except CodonError as e:
      print(f'Invalid codon: {e.token}', file=stdout, flush=True)
      continue
    problem = check(codons) if check is not None else None
    if problem is None:
      return codons
    if not line:
      raise ValueError(problem)
    print(problem, file=stdout, flush=True)


def prompt_codons(stdin: IO[str],
                  stdout: IO[str],
                  defaults: Optional[CodonConfig] = None,
                  ) -> CodonConfig:
  """
  Ask for the start codons, then for the stop codons.

  Tokens may be separated by spaces or commas and are case-insensitive. An
  invalid token re-asks the same question, and an empty answer keeps the
  default codons for that question.

  Parameters
  ----------
  stdin : IO[str]
      Where the answers are read from
  stdout : IO[str]
      Where the questions are written to
  defaults : Optional[CodonConfig], optional
      Codons used for empty answers; also provides enforce_frame. By default
      ATG and TGA/TAA/TAG without frame enforcement
  """
  if defaults is None:
    defaults = CodonConfig.create()
  starts = _ask(START_PROMPT, tuple(sorted(defaults.starts)), stdin, stdout)

  def disjoint(stops: Tuple[str, ...]) -> Optional[str]:
    shared = sorted(set(stops) & set(starts))
    if shared:
      return f'Codon already used as start codon: {shared[0]}'
    return None

  stops = _ask(
      STOP_PROMPT, tuple(sorted(defaults.stops)), stdin, stdout, check=disjoint
  )
  return CodonConfig.create(
      starts=starts, stops=stops, enforce_frame=defaults.enforce_frame
  )
