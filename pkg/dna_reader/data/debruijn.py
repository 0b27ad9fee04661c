from typing import List, Optional, Sequence

import numpy as np
from jaxtyping import Bool, Int

from dna_reader.data.index import MerIndex

NO_SUCCESSOR = -1
KEEP_FIRST = 'keep-first'
OVERWRITE_LAST = 'overwrite-last'
CONFLICT_POLICIES = (KEEP_FIRST, OVERWRITE_LAST)


class DeBruijnGraph():

  def __init__(self,
               conflict_policy: str = KEEP_FIRST,
               capacity: int = 1024,
               ):
    """
    Indexed De Bruijn functional graph.

    Every (k-1)-mer is interned to a dense index, and the graph is kept as two
    one-dimensional tables indexed the same way: the successor table (at most
    one outgoing edge per node, NO_SUCCESSOR when absent) and the
    possible-initial flag table. A node is initial as long as it has never
    been the target of an edge.

    Both tables are preallocated and grow by doubling, so appending a node is
    amortized constant time.

    Parameters
    ----------
    conflict_policy : str, optional
        What to do when a node that already has a successor receives an edge
        to a different node. 'keep-first' leaves the stored edge in place,
        'overwrite-last' replaces it. By default 'keep-first'
    capacity : int, optional
        Initial number of table slots, by default 1024
    """
    if conflict_policy not in CONFLICT_POLICIES:
      raise ValueError(
          f'Unknown conflict policy {conflict_policy!r}, '
          f'expected one of {CONFLICT_POLICIES}'
      )
    self.conflict_policy = conflict_policy
    self.index = MerIndex()
    self.capacity = max(1, capacity)
    self._successor: Int[np.ndarray, 'capacity'] = np.full(
        self.capacity, NO_SUCCESSOR, dtype=np.int64
    )
    self._initial: Bool[np.ndarray, 'capacity'] = np.ones(
        self.capacity, dtype=bool
    )

  @property
  def node_count(self) -> int:
    return len(self.index)

  def __len__(self) -> int:
    return len(self.index)

  @property
  def table_bytes(self) -> int:
    """Bytes held by the used part of the successor and flag tables."""
    n = self.node_count
    return int(self._successor[:n].nbytes + self._initial[:n].nbytes)

  ##############################
  # Interning
  ##############################
  def intern(self, mer: str) -> int:
    n = self.node_count
    index = self.index.intern(mer)
    if index == n:
      if n == self.capacity:
        self._grow()
      self._successor[index] = NO_SUCCESSOR
      self._initial[index] = True
    return index

  def resolve(self, index: int) -> str:
    return self.index.resolve(index)

  def _grow(self) -> None:
    new_capacity = 2 * self.capacity
    successor = np.full(new_capacity, NO_SUCCESSOR, dtype=np.int64)
    successor[:self.capacity] = self._successor
    initial = np.ones(new_capacity, dtype=bool)
    initial[:self.capacity] = self._initial
    self._successor, self._initial = successor, initial
    self.capacity = new_capacity

  def _check(self, index: int) -> None:
    if not 0 <= index < self.node_count:
      raise IndexError(
          f'Node index {index} out of range for {self.node_count} nodes'
      )

  ##############################
  # Edges
  ##############################
  def add_edge(self, left: int, right: int) -> bool:
    """
    Store the edge left -> right.

    The target stops being a possible initial even when the edge itself is
    rejected by the conflict policy.

    Returns
    -------
    bool
        True if successor(left) equals right afterwards, False if a different
        successor was kept.
    """
    self._check(left)
    self._check(right)
    self._initial[right] = False
    current = self._successor[left]
    if current == NO_SUCCESSOR or current == right:
      self._successor[left] = right
      return True
    if self.conflict_policy == OVERWRITE_LAST:
      self._successor[left] = right
      return True
    return False

  def successor(self, index: int) -> Optional[int]:
    self._check(index)
    succ = int(self._successor[index])
    return None if succ == NO_SUCCESSOR else succ

  def is_initial(self, index: int) -> bool:
    self._check(index)
    return bool(self._initial[index])

  def initials(self) -> List[int]:
    return np.flatnonzero(self._initial[:self.node_count]).tolist()

  def successors(self) -> List[int]:
    """
    Snapshot of the successor table as a plain list, NO_SUCCESSOR for none.

    Traversal passes walk this copy; indexing a list is much cheaper than
    indexing a numpy array one element at a time.
    """
    return self._successor[:self.node_count].tolist()

  ##############################
  # Traversal
  ##############################
  def walk_from(self,
                start: int,
                successors: Optional[Sequence[int]] = None
                ) -> List[int]:
    """
    Follow successor links from start until a node without successor, or
    until the next node is already on the path.

    Parameters
    ----------
    start : int
    successors : Optional[Sequence[int]], optional
        A snapshot from successors(), reused across the walks of one pass.
        Taken from the graph when None, by default None

    Returns
    -------
    List[int]
        Duplicate-free path beginning at start
    """
    self._check(start)
    if successors is None:
      successors = self.successors()
    path = [start]
    on_path = {start}
    current = successors[start]
    while current != NO_SUCCESSOR and current not in on_path:
      path.append(current)
      on_path.add(current)
      current = successors[current]
    return path

  def dump(self) -> str:
    """
    One line per node: index, mer, successor index or '-', initial flag (T/F).
    """
    lines = []
    for index, mer in enumerate(self.index):
      succ = int(self._successor[index])
      lines.append('\t'.join((
          str(index),
          mer,
          '-' if succ == NO_SUCCESSOR else str(succ),
          'T' if self._initial[index] else 'F',
      )))
    return '\n'.join(lines)
