from typing import Dict, Iterator, List


class MerIndex():
  """
  Bidirectional map between (k-1)-mer text and a dense integer index.

  Indices are handed out consecutively from 0 in first-seen order, and each
  distinct mer is stored once. Lookups in both directions are constant time.
  """

  def __init__(self):
    self._index_to_mer: List[str] = []
    self._mer_to_index: Dict[str, int] = {}

  def __len__(self) -> int:
    return len(self._index_to_mer)

  def __contains__(self, mer: str) -> bool:
    return mer in self._mer_to_index

  def __iter__(self) -> Iterator[str]:
    return iter(self._index_to_mer)

  def intern(self, mer: str) -> int:
    """
    Return the index of mer, assigning the next free index if it is new.
    """
    index = self._mer_to_index.get(mer)
    if index is None:
      index = len(self._index_to_mer)
      self._index_to_mer.append(mer)
      self._mer_to_index[mer] = index
    return index

  def get_index(self, mer: str) -> int:
    return self._mer_to_index[mer]

  def resolve(self, index: int) -> str:
    if not 0 <= index < len(self._index_to_mer):
      raise IndexError(
          f'Node index {index} out of range for {len(self)} nodes'
      )
    return self._index_to_mer[index]

  @property
  def mers(self) -> List[str]:
    # Exposed for traversal passes that resolve many nodes in a row
    return self._index_to_mer
