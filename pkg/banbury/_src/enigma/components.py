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
"""Rotors, reflectors and plugboards."""

import dataclasses
from typing import FrozenSet, Iterable, Tuple

from banbury._src.utils import alphabet as alphabet_lib
from banbury._src.utils import permutation as permutation_lib

Alphabet = alphabet_lib.Alphabet
Permutation = permutation_lib.Permutation


@dataclasses.dataclass(frozen=True)
class RotorSpec:
  """A rotor: a wiring and the window letters at which it turns its neighbour.

  Attributes:
    name: the catalogue name, e.g. `'III'`.
    wiring: the permutation realized at ring setting and position zero.
    turnovers: indices `T` such that stepping this rotor from window letter
      `T` to `T+1` also steps the rotor on its left.
  """

  name: str
  wiring: Permutation
  turnovers: FrozenSet[int]

  def __post_init__(self):
    if not self.turnovers:
      raise ValueError(f'Rotor `{self.name}` needs at least one turnover.')
    bad = [t for t in self.turnovers if not 0 <= t < self.wiring.size]
    if bad:
      raise ValueError(
          f'Rotor `{self.name}` has turnovers {bad} outside the alphabet.')

  @classmethod
  def from_letters(cls, name: str, wiring: str, turnovers: str,
                   alphabet: Alphabet = alphabet_lib.LATIN) -> 'RotorSpec':
    return cls(name, Permutation.from_letters(wiring, alphabet),
               frozenset(alphabet.encode(turnovers).tolist()))

  @property
  def size(self) -> int:
    return self.wiring.size


@dataclasses.dataclass(frozen=True)
class ReflectorSpec:
  """A reflector: a fixed-point-free involution."""

  name: str
  wiring: Permutation

  def __post_init__(self):
    if not self.wiring.is_fixed_point_free_involution():
      raise ValueError(
          f'Reflector `{self.name}` must be an involution without fixed '
          f'points, got {self.wiring}.')

  @classmethod
  def from_letters(cls, name: str, wiring: str,
                   alphabet: Alphabet = alphabet_lib.LATIN) -> 'ReflectorSpec':
    return cls(name, Permutation.from_letters(wiring, alphabet))


@dataclasses.dataclass(frozen=True)
class Plugboard:
  """The Steckerbrett: letter pairs swapped before and after the rotors.

  Attributes:
    pairs: sorted pairs `(a, b)` of indices with `a < b`.
    size: the alphabet size.
  """

  pairs: Tuple[Tuple[int, int], ...]
  size: int

  def __post_init__(self):
    normalized = tuple(sorted(tuple(sorted(p)) for p in self.pairs))
    object.__setattr__(self, 'pairs', normalized)
    if len(normalized) > self.size // 2:
      raise ValueError(
          f'A plugboard over {self.size} letters holds at most '
          f'{self.size // 2} pairs, got {len(normalized)}.')
    # Validates disjointness and range.
    object.__setattr__(
        self, '_permutation', Permutation.from_pairs(normalized, self.size))

  @classmethod
  def identity(cls, size: int) -> 'Plugboard':
    return cls((), size)

  @classmethod
  def from_letters(cls, pairs: Iterable[str],
                   alphabet: Alphabet = alphabet_lib.LATIN) -> 'Plugboard':
    """Builds a plugboard from two-letter strings such as `['AB', 'CD']`."""
    indices = []
    for pair in pairs:
      if len(pair) != 2:
        raise ValueError(f'A plug pair has two letters, got `{pair}`.')
      indices.append(tuple(alphabet.encode(pair).tolist()))
    return cls(tuple(indices), alphabet.size)

  @property
  def permutation(self) -> Permutation:
    return self._permutation

  def to_letters(self,
                 alphabet: Alphabet = alphabet_lib.LATIN) -> Tuple[str, ...]:
    return tuple(alphabet.decode(p) for p in self.pairs)
