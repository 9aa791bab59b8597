# Copyright 2021 DeepMind Technologies Limited. All Rights Reserved.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
# ==============================================================================
"""Brute-force reference implementations used by tests."""

import itertools
from typing import Dict, FrozenSet, List, Sequence, Set, Tuple


def positionwise_matches(m1: str, m2: str,
                         shift: int) -> Tuple[Tuple[int, ...], int]:
  """Runs and overlap of `m2` slid `shift` right, one position at a time."""
  pairs = []
  for j in range(len(m2)):
    i = j + shift
    if 0 <= i < len(m1):
      pairs.append(m1[i] == m2[j])
  runs = []
  current = 0
  for equal in pairs:
    if equal:
      current += 1
    elif current:
      runs.append(current)
      current = 0
  if current:
    runs.append(current)
  return tuple(runs), len(pairs)


def edge_subset_cycles(
    edges: Sequence[Tuple[str, str]],
    max_length: int) -> Set[FrozenSet[int]]:
  """Cycles of a multigraph found by trying every subset of edges.

  A subset of edge indices is a simple cycle when it is connected and every
  vertex it touches has degree two. Self-loops are ignored.

  Args:
    edges: the endpoints of each edge.
    max_length: the largest number of edges in a cycle.

  Returns:
    The cycles as sets of edge indices.
  """
  cycles = set()
  usable = [i for i, (u, v) in enumerate(edges) if u != v]
  for size in range(2, max_length + 1):
    for subset in itertools.combinations(usable, size):
      degree: Dict[str, int] = {}
      for i in subset:
        for vertex in edges[i]:
          degree[vertex] = degree.get(vertex, 0) + 1
      if any(d != 2 for d in degree.values()):
        continue
      if _connected([edges[i] for i in subset]):
        cycles.add(frozenset(subset))
  return cycles


def _connected(edges: List[Tuple[str, str]]) -> bool:
  vertices = {v for edge in edges for v in edge}
  start = next(iter(vertices))
  seen = {start}
  frontier = [start]
  while frontier:
    vertex = frontier.pop()
    for u, v in edges:
      for a, b in ((u, v), (v, u)):
        if a == vertex and b not in seen:
          seen.add(b)
          frontier.append(b)
  return seen == vertices


def all_offset_placements(chain: Sequence[Tuple[str, int]],
                          mapping: Dict[str, str],
                          letters: str) -> List[int]:
  """Offsets at which a chain extends `mapping` to a valid partial alphabet.

  Letter `c` at chain position `p` placed at offset `o` sits in column
  `letters[(o + p) % n]` and pairs the two letters. The extension is valid if
  no letter pairs with itself and every letter has at most one partner.

  Args:
    chain: `(letter, position)` elements.
    mapping: the partial alphabet so far, stored in both directions.
    letters: the column letters.

  Returns:
    The valid offsets in increasing order.
  """
  n = len(letters)
  valid = []
  for offset in range(n):
    extended = dict(mapping)
    ok = True
    for letter, position in chain:
      column = letters[(offset + position) % n]
      if column == letter:
        ok = False
        break
      for a, b in ((letter, column), (column, letter)):
        if extended.get(a, b) != b:
          ok = False
        extended[a] = b
      if not ok:
        break
    if ok:
      valid.append(offset)
  return valid
