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
"""Scritchmus: from in-depth offsets to the end-wheel alphabet and rotor.

A deduction `G=K+4` says that the message keys behind the third indicator
letters `G` and `K` are four apart. Deductions sharing letters form chains of
letters at fixed relative distances. The indicator letter is the encipherment
of the key letter by the machine's cipher alphabet at the third keypress of
the ground setting, an involution without fixed points. Sliding a chain along
the 26 key letters therefore writes letter pairs into that alphabet, and most
offsets contradict it.

Two messages stay in depth only if the right rotor does not turn the middle
one between their key letters, so every placed deduction also excludes the
turnovers that fall inside its column arc.
"""

import dataclasses
import re
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from absl import logging
from banbury._src.enigma import catalogue as catalogue_lib
from banbury._src.enigma import components
from banbury._src.utils import alphabet as alphabet_lib
from banbury._src.utils import errors

Alphabet = alphabet_lib.Alphabet
Catalogue = catalogue_lib.Catalogue
RotorSpec = components.RotorSpec

_DEDUCTION = re.compile(r'^\s*(\S)\s*=\s*(\S)\s*([+-])\s*(\d+)\s*$')


@dataclasses.dataclass(frozen=True)
class Deduction:
  """`letter_a` sits `offset` columns after `letter_b`.

  The two messages were found in depth with no turnover in the columns from
  `letter_b` up to, but excluding, `letter_a`.
  """

  letter_a: str
  letter_b: str
  offset: int
  weight: float = 0.

  def __post_init__(self):
    if len(self.letter_a) != 1 or len(self.letter_b) != 1:
      raise errors.BanburyError(
          f'A deduction relates two letters, got `{self.letter_a}` and '
          f'`{self.letter_b}`.')
    if self.letter_a == self.letter_b:
      raise errors.BanburyError(
          f'A deduction relates two different letters, got '
          f'`{self.letter_a}` twice.')
    if self.offset < 1:
      raise errors.BanburyError(
          f'`offset` must be positive, got {self.offset}.')

  @classmethod
  def parse(cls, text: str, weight: float = 0.) -> 'Deduction':
    """Parses `G=K+4`; `B=N-24` becomes `N=B+24`."""
    match = _DEDUCTION.match(text)
    if match is None:
      raise errors.BanburyError(
          f'Cannot parse deduction `{text}`; expected e.g. `G=K+4`.')
    a, b, sign, offset = match.groups()
    if sign == '-':
      a, b = b, a
    return cls(a, b, int(offset), weight)

  def __str__(self) -> str:
    return f'{self.letter_a}={self.letter_b}+{self.offset}'


def _strength(deduction: Deduction) -> Tuple[float, str]:
  return (deduction.weight, str(deduction))


@dataclasses.dataclass(frozen=True)
class Chain:
  """Letters at fixed relative columns.

  Attributes:
    elements: `(letter, position)` pairs by increasing position, starting at
      position 0.
    deductions: the deductions the chain was built from.
    size: the number of columns.
  """

  elements: Tuple[Tuple[str, int], ...]
  deductions: Tuple[Deduction, ...] = ()
  size: int = 26

  def __post_init__(self):
    object.__setattr__(self, 'elements', tuple(
        (letter, int(position)) for letter, position in self.elements))
    positions = [p for _, p in self.elements]
    letters = [c for c, _ in self.elements]
    if not positions or positions[0] != 0:
      raise ValueError(f'A chain starts at position 0, got {self.elements}.')
    if any(b <= a for a, b in zip(positions, positions[1:])):
      raise ValueError(
          f'Chain positions must increase strictly, got {self.elements}.')
    if positions[-1] >= self.size:
      raise ValueError(
          f'A chain spans at most {self.size - 1} columns, got '
          f'{positions[-1]}.')
    if len(set(letters)) != len(letters):
      raise ValueError(f'Chain letters must be distinct, got {letters}.')

  @classmethod
  def from_text(cls, text: str, size: int = 26) -> 'Chain':
    """Builds a chain from a drawing such as `V----K---G`."""
    elements = tuple((c, i) for i, c in enumerate(text) if c not in '-. ')
    first = elements[0][1] if elements else 0
    return cls(tuple((c, p - first) for c, p in elements), size=size)

  @property
  def letters(self) -> Tuple[str, ...]:
    return tuple(c for c, _ in self.elements)

  @property
  def span(self) -> int:
    return self.elements[-1][1]

  @property
  def weight(self) -> float:
    return sum(d.weight for d in self.deductions)

  def position(self, letter: str) -> int:
    return dict(self.elements)[letter]

  def arcs(self) -> List[Tuple[int, int]]:
    """Relative `(start, length)` column arcs free of turnovers.

    One arc per deduction, from `letter_b` over `offset` columns. A chain
    without deductions uses its hull, the whole circle when it is full.
    """
    if self.deductions:
      return [(self.position(d.letter_b), d.offset) for d in self.deductions]
    if len(self.elements) == self.size:
      return [(0, self.size)]
    return [(0, self.span)]

  def __str__(self) -> str:
    cells = ['-'] * (self.span + 1)
    for letter, position in self.elements:
      cells[position] = letter
    return ''.join(cells)


@dataclasses.dataclass(frozen=True)
class AlphabetHypothesis:
  """A partial cipher alphabet: an involution without fixed points.

  Attributes:
    mapping: letter to letter, recorded in both directions.
  """

  mapping: Tuple[Tuple[str, str], ...] = ()

  def __post_init__(self):
    items = dict(self.mapping)
    if len(items) != len(self.mapping):
      raise ValueError(f'Letters with two images in {self.mapping}.')
    for a, b in items.items():
      if a == b:
        raise ValueError(f'`{a}` cannot encipher to itself.')
      if items.get(b) != a:
        raise ValueError(f'`{a}` -> `{b}` is not matched by `{b}` -> `{a}`.')
    object.__setattr__(self, 'mapping', tuple(sorted(items.items())))

  @classmethod
  def from_pairs(cls, pairs: Iterable[Tuple[str, str]]
                ) -> 'AlphabetHypothesis':
    mapping = {}
    for a, b in pairs:
      mapping[a] = b
      mapping[b] = a
    return cls(tuple(mapping.items()))

  @classmethod
  def from_letters(cls, letters: str,
                   alphabet: Alphabet = alphabet_lib.LATIN
                  ) -> 'AlphabetHypothesis':
    """Reads images under the header `A..Z`; `.` marks an unknown column."""
    return cls(tuple((alphabet.letter(i), c) for i, c in enumerate(letters)
                     if c != '.'))

  def as_dict(self) -> Dict[str, str]:
    return dict(self.mapping)

  @property
  def pairs(self) -> Tuple[Tuple[str, str], ...]:
    return tuple((a, b) for a, b in self.mapping if a < b)

  def get(self, letter: str) -> Optional[str]:
    return self.as_dict().get(letter)

  def issubset(self, other: 'AlphabetHypothesis') -> bool:
    return set(self.mapping) <= set(other.mapping)

  def to_letters(self, alphabet: Alphabet = alphabet_lib.LATIN) -> str:
    mapping = self.as_dict()
    return ''.join(mapping.get(c, '.') for c in alphabet.letters)


@dataclasses.dataclass(frozen=True)
class PlacedChain:
  """A chain whose position 0 sits under column `offset`."""

  chain: Chain
  offset: int

  def column(self, letter: str) -> int:
    return (self.offset + self.chain.position(letter)) % self.chain.size

  def arcs(self) -> List[Tuple[int, int]]:
    return [((self.offset + start) % self.chain.size, length)
            for start, length in self.chain.arcs()]


@dataclasses.dataclass(frozen=True)
class AlphabetCandidate:
  """An alphabet hypothesis together with the chain placements behind it."""

  hypothesis: AlphabetHypothesis
  placed: Tuple[PlacedChain, ...]


def _extend(mapping: Mapping[str, str], chain: Chain, offset: int,
            alphabet: Alphabet) -> Optional[Dict[str, str]]:
  extended = dict(mapping)
  for letter, position in chain.elements:
    column = alphabet.letter(offset + position)
    if column == letter:
      return None
    for a, b in ((letter, column), (column, letter)):
      if extended.setdefault(a, b) != b:
        return None
  return extended


def placements(chain: Chain,
               hypothesis: AlphabetHypothesis = AlphabetHypothesis(),
               alphabet: Alphabet = alphabet_lib.LATIN
              ) -> List[Tuple[int, AlphabetHypothesis]]:
  """Slides `chain` along the columns and keeps the consistent offsets.

  Placing letter `c` under column `x` records `x <-> c`. A placement survives
  if no letter falls under itself and no letter gains a second partner.

  Args:
    chain: the chain to place.
    hypothesis: the alphabet recorded so far.
    alphabet: the column letters.

  Returns:
    `(offset, extended hypothesis)` for every surviving offset, where the
    chain's position 0 sits under column `offset`.
  """
  mapping = hypothesis.as_dict()
  result = []
  for offset in range(alphabet.size):
    extended = _extend(mapping, chain, offset, alphabet)
    if extended is not None:
      result.append((offset, AlphabetHypothesis(tuple(extended.items()))))
  return result


def _normalized_chain(positions: Mapping[str, int],
                      deductions: Sequence[Deduction], size: int) -> Chain:
  ordered = sorted(positions.items(), key=lambda item: (item[1], item[0]))
  best = None
  for i, (letter, position) in enumerate(ordered):
    previous = ordered[i - 1][1]
    gap = (position - previous) % size or size
    key = (-gap, letter)
    if best is None or key < best[0]:
      best = (key, position)
  origin = best[1]
  elements = sorted(
      ((c, (p - origin) % size) for c, p in positions.items()),
      key=lambda item: item[1])
  return Chain(tuple(elements), tuple(sorted(deductions, key=str)), size)


def _components(deductions: Sequence[Deduction]) -> List[List[Deduction]]:
  parent = {}

  def find(x):
    while parent.setdefault(x, x) != x:
      parent[x] = parent[parent[x]]
      x = parent[x]
    return x

  for d in deductions:
    parent[find(d.letter_a)] = find(d.letter_b)
  groups: Dict[str, List[Deduction]] = {}
  for d in deductions:
    groups.setdefault(find(d.letter_a), []).append(d)
  return list(groups.values())


def _positions(group: Sequence[Deduction],
               size: int) -> Optional[Dict[str, int]]:
  """Relative positions of a connected group, `None` if contradictory."""
  root = min(min(d.letter_a, d.letter_b) for d in group)
  positions = {root: 0}
  frontier = [root]
  while frontier:
    letter = frontier.pop()
    for d in group:
      if d.letter_b == letter:
        other, position = d.letter_a, positions[letter] + d.offset
      elif d.letter_a == letter:
        other, position = d.letter_b, positions[letter] - d.offset
      else:
        continue
      position %= size
      if other not in positions:
        positions[other] = position
        frontier.append(other)
      elif positions[other] != position:
        return None
  if len(set(positions.values())) != len(positions):
    return None
  return positions


def build_chains(deductions: Sequence[Deduction],
                 min_weight: float = 7.,
                 size: int = 26) -> Tuple[List[Chain], List[Deduction]]:
  """Links deductions that share letters into chains.

  A group whose offsets contradict each other, or put two letters in one
  column, loses its weakest deduction and is rebuilt until it is consistent.

  Args:
    deductions: the deductions; those below `min_weight` are ignored.
    min_weight: the weight threshold in decibans.
    size: the number of columns.

  Returns:
    The chains by decreasing weight, and the deductions dropped as
    contradictory.
  """
  pending = [list(g) for g in _components(
      [d for d in deductions if d.weight >= min_weight])]
  chains = []
  dropped = []
  while pending:
    group = pending.pop()
    positions = _positions(group, size)
    if positions is None:
      weakest = min(group, key=_strength)
      logging.info('Dropping contradictory deduction %s (%.1f db).', weakest,
                   weakest.weight)
      dropped.append(weakest)
      group = [d for d in group if d is not weakest]
      pending.extend(_components(group))
      continue
    chains.append(_normalized_chain(positions, group, size))
  chains.sort(key=lambda c: (-c.weight, c.letters))
  return chains, dropped


def enumerate_alphabets(chains: Sequence[Chain],
                        seed: AlphabetHypothesis = AlphabetHypothesis(),
                        alphabet: Alphabet = alphabet_lib.LATIN,
                        max_alphabets: Optional[int] = None,
                        max_nodes: Optional[int] = None
                       ) -> List[AlphabetCandidate]:
  """Places every chain at once, depth first.

  Chains are placed heaviest first. A branch dies as soon as a chain has no
  consistent offset.

  Args:
    chains: the chains to place.
    seed: pairs already known.
    alphabet: the column letters.
    max_alphabets: stop after this many complete placements.
    max_nodes: stop after trying this many partial placements.

  Returns:
    The surviving candidates, sorted by their alphabets.
  """
  ordered = sorted(chains, key=lambda c: (-c.weight, c.letters))
  found = []
  nodes = 0
  truncated = False
  stack = [(0, seed.as_dict(), ())]
  while stack:
    depth, mapping, placed = stack.pop()
    if depth == len(ordered):
      found.append(AlphabetCandidate(
          AlphabetHypothesis(tuple(mapping.items())), placed))
      if max_alphabets is not None and len(found) >= max_alphabets:
        truncated = bool(stack)
        break
      continue
    nodes += 1
    if max_nodes is not None and nodes > max_nodes:
      truncated = True
      break
    chain = ordered[depth]
    children = []
    for offset in range(alphabet.size):
      extended = _extend(mapping, chain, offset, alphabet)
      if extended is not None:
        children.append(
            (depth + 1, extended, placed + (PlacedChain(chain, offset),)))
    stack.extend(reversed(children))
  if truncated:
    logging.warning('[Banbury]: stopped enumerating alphabets after %d '
                    'candidates.', len(found))
  return sorted(found, key=lambda c: (c.hypothesis.mapping,
                                      [p.offset for p in c.placed]))


def compatible_rotors(placed: Sequence[PlacedChain],
                      rotors: Sequence[RotorSpec]) -> List[str]:
  """Names of the rotors whose turnovers avoid every placed arc.

  A turnover `T` sits between columns `T` and `T + 1`; an arc of `length`
  columns starting at `start` holds the turnovers `start .. start+length-1`.

  Args:
    placed: the placed chains.
    rotors: the candidate right rotors.

  Returns:
    The compatible rotor names, in the order given.
  """
  arcs = [arc for p in placed for arc in p.arcs()]
  names = []
  for rotor in rotors:
    n = rotor.size
    if not any((t - start) % n < length
               for t in rotor.turnovers for start, length in arcs):
      names.append(rotor.name)
  return names


@dataclasses.dataclass(frozen=True)
class ScritchmusConfig:
  """Parameters of `deduce`.

  Attributes:
    min_weight: deductions lighter than this many decibans are ignored.
    max_rounds: how many times the weakest deduction may be dropped.
    max_alphabets: cap on the enumerated alphabets per round.
    max_nodes: cap on the partial placements tried per round.
  """

  min_weight: float = 7.
  max_rounds: int = 5
  max_alphabets: int = 64
  max_nodes: int = 200_000

  def __post_init__(self):
    if self.max_rounds < 0:
      raise ValueError(
          f'`max_rounds` must be non-negative, got {self.max_rounds}.')
    if self.max_alphabets < 1:
      raise ValueError(
          f'`max_alphabets` must be at least 1, got {self.max_alphabets}.')


@dataclasses.dataclass(frozen=True)
class ScritchmusResult:
  """What `deduce` concluded.

  Attributes:
    chains: the chains of the last round.
    candidates: the surviving alphabets with their placements.
    shortlist: right rotors compatible with at least one candidate.
    dropped: deductions discarded along the way, in order.
    rounds: the number of drop-and-retry rounds used.
    fallback: whether every rotor was kept because no round succeeded.
  """

  chains: Tuple[Chain, ...]
  candidates: Tuple[AlphabetCandidate, ...]
  shortlist: Tuple[str, ...]
  dropped: Tuple[Deduction, ...]
  rounds: int
  fallback: bool = False


def deduce(deductions: Sequence[Deduction],
           catalogue: Optional[Catalogue] = None,
           config: ScritchmusConfig = ScritchmusConfig(),
           rotor_names: Optional[Sequence[str]] = None) -> ScritchmusResult:
  """Runs chain building, alphabet enumeration and rotor elimination.

  When no alphabet survives, or the survivors leave no compatible rotor, the
  weakest remaining deduction is dropped and the round repeated.

  Args:
    deductions: the in-depth deductions of the day.
    catalogue: the rotors to test; default Wehrmacht.
    config: the search parameters.
    rotor_names: restricts the candidate right rotors.

  Returns:
    The result of the first successful round, or all rotors if none was.
  """
  catalogue = catalogue or catalogue_lib.builtin_catalogue()
  alphabet = catalogue.alphabet
  rotors = [catalogue.rotor(n) for n in rotor_names or catalogue.rotor_names]
  active = sorted((d for d in deductions if d.weight >= config.min_weight),
                  key=_strength, reverse=True)
  dropped = []
  chains = []
  for round_index in range(config.max_rounds + 1):
    chains, contradictory = build_chains(active, config.min_weight,
                                         alphabet.size)
    dropped.extend(contradictory)
    active = [d for d in active if d not in contradictory]
    candidates = enumerate_alphabets(
        chains, alphabet=alphabet, max_alphabets=config.max_alphabets,
        max_nodes=config.max_nodes)
    compatible = set()
    for candidate in candidates:
      compatible.update(compatible_rotors(candidate.placed, rotors))
    shortlist = tuple(r.name for r in rotors if r.name in compatible)
    logging.info('Round %d: %d chains, %d alphabets, rotors %s.',
                 round_index, len(chains), len(candidates),
                 ' '.join(shortlist) or '-')
    if shortlist:
      return ScritchmusResult(tuple(chains), tuple(candidates), shortlist,
                              tuple(dropped), round_index)
    if not active:
      break
    weakest = active.pop()
    logging.info('Dropping weakest deduction %s (%.1f db).', weakest,
                 weakest.weight)
    dropped.append(weakest)
  logging.warning('[Banbury]: no consistent rotor after %d rounds; keeping '
                  'all rotors.', config.max_rounds)
  return ScritchmusResult(tuple(chains), (), tuple(r.name for r in rotors),
                          tuple(dropped), config.max_rounds, fallback=True)
