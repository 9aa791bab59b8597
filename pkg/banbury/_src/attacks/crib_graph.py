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
"""Cribs and their letter graphs.

A crib is a guessed plaintext fragment written under the ciphertext it is
believed to produce. Each aligned pair `(plain[i], cipher[i])` is an edge
labelled with the 1-based position `i + 1`; closed walks in this graph are
the loops that make a bombe test strong.
"""

import dataclasses
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from banbury._src.protocol import indicator
from banbury._src.utils import alphabet as alphabet_lib
from banbury._src.utils import errors
from banbury._src.utils import records

Alphabet = alphabet_lib.Alphabet
Intercept = indicator.Intercept

DEFAULT_MAX_LOOP = 8
_ANCHOR_KEY = 'anchor'


@dataclasses.dataclass(frozen=True)
class Crib:
  """Guessed plaintext aligned with ciphertext.

  Attributes:
    plain: the guessed plaintext.
    cipher: the ciphertext under it.
    anchor: the 0-based index of the first crib letter in the message body.
  """

  plain: str
  cipher: str
  anchor: int = 0

  def __post_init__(self):
    if not self.plain:
      raise errors.BanburyError('A crib needs at least one letter.')
    if len(self.plain) != len(self.cipher):
      raise errors.BanburyError(
          f'Crib rows differ in length: {len(self.plain)} plaintext and '
          f'{len(self.cipher)} ciphertext letters.')
    if self.anchor < 0:
      raise ValueError(f'`anchor` must be non-negative, got {self.anchor}.')

  def __len__(self) -> int:
    return len(self.plain)

  @property
  def misaligned(self) -> Tuple[int, ...]:
    """Indices at which a letter would encipher to itself."""
    return tuple(i for i, (p, c) in enumerate(zip(self.plain, self.cipher))
                 if p == c)

  def check(self, alphabet: Alphabet = alphabet_lib.LATIN) -> None:
    """Raises unless both rows are letters of `alphabet` and never agree."""
    alphabet.encode(self.plain)
    alphabet.encode(self.cipher)
    if self.misaligned:
      i = self.misaligned[0]
      raise errors.CribMisalignedError(
          f'crib misaligned: `{self.plain[i]}` would encipher to itself at '
          f'position {i + 1}.')

  def prefix(self, length: int) -> 'Crib':
    return Crib(self.plain[:length], self.cipher[:length], self.anchor)


def crib_from_intercept(intercept: Intercept, plain: str,
                        anchor: int = 0) -> Crib:
  """Aligns `plain` under the body of `intercept` starting at `anchor`."""
  end = anchor + len(plain)
  if anchor < 0 or end > len(intercept.body):
    raise errors.BanburyError(
        f'Crib window [{anchor}, {end}) exceeds the {len(intercept.body)} '
        f'letters of intercept `{intercept.message_id}`.')
  return Crib(plain, intercept.body[anchor:end], anchor)


def parse_crib(lines: Iterable[str],
               alphabet: Alphabet = alphabet_lib.LATIN,
               source: str = '<string>') -> Crib:
  """Reads the plaintext row, the ciphertext row and `anchor: N`."""
  rows = list(records.iter_records(lines, source, separator=None))
  if len(rows) not in (2, 3):
    raise errors.RecordError(
        f'expected a plaintext row, a ciphertext row and an optional '
        f'`anchor:` line, got {len(rows)} lines', source)
  anchor = 0
  if len(rows) == 3:
    key, value = records.key_value(rows[2], source)
    if key != _ANCHOR_KEY or not value.isdigit():
      raise errors.RecordError(
          f'expected `anchor: <int>`, got `{rows[2].fields[0]}`', source,
          rows[2].line_number)
    anchor = int(value)
  plain, cipher = (''.join(r.fields[0].split()).upper() for r in rows[:2])
  for row, text in zip(rows, (plain, cipher)):
    try:
      alphabet.encode(text)
    except errors.BanburyError as e:
      raise errors.RecordError(str(e), source, row.line_number) from None
  try:
    return Crib(plain, cipher, anchor)
  except errors.BanburyError as e:
    raise errors.RecordError(str(e), source) from None


def serialize_crib(crib: Crib) -> List[str]:
  return [crib.plain, crib.cipher, f'{_ANCHOR_KEY}: {crib.anchor}']


def load_crib(path: str, alphabet: Alphabet = alphabet_lib.LATIN) -> Crib:
  return parse_crib(records.read_lines(path), alphabet, source=path)


def store_crib(crib: Crib, path: str) -> None:
  records.write_lines(path, serialize_crib(crib))


@dataclasses.dataclass(frozen=True)
class CribEdge:
  plain: str
  cipher: str
  position: int

  def other(self, letter: str) -> str:
    return self.cipher if letter == self.plain else self.plain


@dataclasses.dataclass(frozen=True)
class CribGraph:
  """The undirected multigraph of a crib, one edge per crib position."""

  letters: Tuple[str, ...]
  edges: Tuple[CribEdge, ...]

  def incident(self, letter: str) -> List[int]:
    """Indices of the edges touching `letter`, in crib order."""
    return [i for i, e in enumerate(self.edges)
            if letter in (e.plain, e.cipher)]

  def degree(self, letter: str) -> int:
    return len(self.incident(letter))

  def neighbours(self, letter: str) -> List[Tuple[str, int]]:
    return [(self.edges[i].other(letter), self.edges[i].position)
            for i in self.incident(letter)]

  def most_connected(self) -> str:
    """The letter of highest degree, alphabetically first among ties."""
    return min(self.letters, key=lambda c: (-self.degree(c), c))

  def to_text(self) -> List[str]:
    lines = []
    for letter in self.letters:
      cells = ' '.join(f'{c}@{p}' for c, p in self.neighbours(letter))
      lines.append(f'{letter}: {cells}')
    return lines


def build_crib_graph(crib: Crib,
                     alphabet: Alphabet = alphabet_lib.LATIN) -> CribGraph:
  """Builds the letter graph; raises `CribMisalignedError` if misaligned."""
  crib.check(alphabet)
  edges = tuple(CribEdge(p, c, i + 1)
                for i, (p, c) in enumerate(zip(crib.plain, crib.cipher)))
  letters = tuple(sorted(set(crib.plain) | set(crib.cipher)))
  return CribGraph(letters, edges)


@dataclasses.dataclass(frozen=True)
class Loop:
  """A simple cycle of the crib graph.

  Attributes:
    letters: the letters in walking order, starting from the smallest.
    edges: `edges[k]` joins `letters[k]` and `letters[k + 1]` (cyclically).
    positions: the crib positions of `edges`.
  """

  letters: Tuple[str, ...]
  edges: Tuple[int, ...]
  positions: Tuple[int, ...]

  def __len__(self) -> int:
    return len(self.edges)

  def starting_at(self, letter: str) -> Tuple[int, ...]:
    """The edges in walking order from `letter` back to itself."""
    k = self.letters.index(letter)
    return self.edges[k:] + self.edges[:k]

  def __str__(self) -> str:
    steps = ''.join(f'-{p}-{c}' for p, c in
                    zip(self.positions, self.letters[1:] + self.letters[:1]))
    return self.letters[0] + steps


def find_loops(graph: CribGraph,
               max_length: int = DEFAULT_MAX_LOOP) -> List[Loop]:
  """All simple cycles with at most `max_length` edges.

  Each cycle is reported once, whatever its rotation or direction. Parallel
  edges between the same two letters form cycles of length 2.

  Args:
    graph: the crib graph.
    max_length: the longest cycle to report.

  Returns:
    The loops, shortest first, then by letters and positions.
  """
  if max_length < 2:
    raise ValueError(f'`max_length` must be at least 2, got {max_length}.')
  incident: Dict[str, List[int]] = {c: graph.incident(c)
                                    for c in graph.letters}
  found: Dict[frozenset, Loop] = {}

  def walk(start: str, path: List[str], used: List[int]) -> None:
    here = path[-1]
    for e in incident[here]:
      if used and e == used[-1]:
        continue
      there = graph.edges[e].other(here)
      if there == start and used:
        key = frozenset(used + [e])
        if key not in found:
          edges = tuple(used + [e])
          found[key] = Loop(tuple(path), edges,
                            tuple(graph.edges[i].position for i in edges))
      elif there > start and there not in path and len(used) + 1 < max_length:
        walk(start, path + [there], used + [e])

  for start in graph.letters:
    walk(start, [start], [])
  return sorted(found.values(),
                key=lambda loop: (len(loop), loop.letters, loop.positions))


def loops_through(loops: Sequence[Loop], letter: str) -> List[Loop]:
  return [loop for loop in loops if letter in loop.letters]


def choose_register(graph: CribGraph, override: Optional[str] = None) -> str:
  """The letter whose stecker partner the bombe hypothesizes."""
  if override is None:
    return graph.most_connected()
  if override not in graph.letters:
    raise errors.BanburyError(
        f'Test register `{override}` is not a crib letter; choose one of '
        f'{"".join(graph.letters)}.')
  return override
