"""
Read sources: plain text (one read per line) or FASTA (one read per record),
switching to FASTA at the first header line. Reads are yielded lazily so a
pipe fed by a running sequencer is processed while it is still being written.
"""
import sys
from typing import IO, Iterator, List

STDIN = '-'


class ReadSourceError(OSError):
  """The read source could not be opened or failed while being read."""


def parse_reads(handle: IO[str]) -> Iterator[str]:
  """
  Yield raw read texts from an open text handle.

  Plain lines are reads on their own. Once a line starting with '>' is seen,
  every following line belongs to a FASTA record whose sequence lines are
  concatenated into one read. Lines before the first header are plain reads.
  """
  fasta = False
  record: List[str] = []
  for line in handle:
    line = line.strip()
    if not line:
      continue
    if line.startswith('>'):
      if fasta and record:
        yield ''.join(record)
      fasta = True
      record = []
    elif fasta:
      record.append(line)
    else:
      yield line
  if fasta and record:
    yield ''.join(record)


def _guarded(handle: IO[str], name: str, close: bool) -> Iterator[str]:
  try:
    yield from parse_reads(handle)
  except (OSError, UnicodeDecodeError) as e:
    raise ReadSourceError(f'Error while reading {name}: {e}') from e
  finally:
    if close:
      handle.close()


def open_read_source(file: str) -> Iterator[str]:
  """
  Open the read file, or standard input for '-'.

  The file is opened immediately so a missing or unreadable file fails at
  startup; its contents are read on demand.

  Raises
  ------
  ReadSourceError
      If the file cannot be opened
  """
  if file == STDIN:
    return _guarded(sys.stdin, '<stdin>', close=False)
  try:
    handle = open(file, 'r')
  except OSError as e:
    raise ReadSourceError(
        f'Cannot open read file {file}: {e.strerror or e}'
    ) from e
  return _guarded(handle, file, close=True)
