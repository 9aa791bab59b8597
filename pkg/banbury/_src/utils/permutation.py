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
"""Permutations of an alphabet, the building block of every cipher here."""

from typing import Iterable, List, Optional, Sequence, Tuple

from banbury._src.utils import alphabet as alphabet_lib
import chex
import numpy as np

Array = chex.Array
Alphabet = alphabet_lib.Alphabet


class Permutation:
  """A bijection on the indices `{0, ..., n-1}` of an alphabet.

  Rotor wirings, reflectors, plugboards and the cipher alphabets deduced during
  cryptanalysis are all permutations. A permutation is immutable; its inverse
  is computed on first use and cached.

  Permutations compose like functions: `p.compose(q)` (also written `p @ q`)
  is the permutation `x -> p(q(x))`, i.e. `q` is applied first.
  """

  def __init__(self, forward: Sequence[int]):
    """Initializes a permutation from its forward map.

    Args:
      forward: a sequence of length `n` whose entry `i` is the image of `i`.
        It must contain every index in `0..n-1` exactly once.
    """
    forward = np.array(forward, dtype=np.int64)
    if forward.ndim != 1 or forward.size < 1:
      raise ValueError(
          f'`forward` must be a non-empty 1-D sequence, got shape '
          f'{forward.shape}.')
    n = forward.size
    if np.any(forward < 0) or np.any(forward >= n) or (
        np.unique(forward).size != n):
      raise ValueError(
          f'`forward` is not a bijection on 0..{n - 1}: {forward.tolist()}.')
    forward.setflags(write=False)
    self._forward = forward
    self._inverse: Optional['Permutation'] = None

  @classmethod
  def identity(cls, n: int) -> 'Permutation':
    return cls(np.arange(n))

  @classmethod
  def from_letters(cls, wiring: str,
                   alphabet: Alphabet = alphabet_lib.LATIN) -> 'Permutation':
    """Builds a permutation from the images of `A, B, C, ...` as letters."""
    if len(wiring) != alphabet.size:
      raise ValueError(
          f'Wiring `{wiring}` has {len(wiring)} letters, expected '
          f'{alphabet.size}.')
    return cls(alphabet.encode(wiring))

  @classmethod
  def from_pairs(cls, pairs: Iterable[Tuple[int, int]],
                 n: int) -> 'Permutation':
    """Builds the involution swapping each pair and fixing everything else."""
    forward = np.arange(n)
    seen = set()
    for a, b in pairs:
      if a == b:
        raise ValueError(f'Cannot pair index {a} with itself.')
      for x in (a, b):
        if x in seen:
          raise ValueError(f'Index {x} appears in more than one pair.')
        seen.add(x)
      forward[a], forward[b] = b, a
    return cls(forward)

  @property
  def size(self) -> int:
    return self._forward.size

  @property
  def forward(self) -> np.ndarray:
    """The read-only forward map as an int array."""
    return self._forward

  @property
  def inverse(self) -> 'Permutation':
    if self._inverse is None:
      inverse = np.empty_like(self._forward)
      inverse[self._forward] = np.arange(self.size)
      self._inverse = Permutation(inverse)
      self._inverse._inverse = self  # pylint: disable=protected-access
    return self._inverse

  def __call__(self, x: Array) -> Array:
    """Applies the permutation elementwise to an index or an index array."""
    return self._forward[x]

  def compose(self, other: 'Permutation') -> 'Permutation':
    """Returns `self o other`, the permutation applying `other` first."""
    if other.size != self.size:
      raise ValueError(
          f'Cannot compose permutations of sizes {self.size} and '
          f'{other.size}.')
    return Permutation(self._forward[other.forward])

  def __matmul__(self, other: 'Permutation') -> 'Permutation':
    return self.compose(other)

  def conjugate(self, by: 'Permutation') -> 'Permutation':
    """Returns `by o self o by^-1`."""
    return by.compose(self).compose(by.inverse)

  def fixed_points(self) -> np.ndarray:
    return np.flatnonzero(self._forward == np.arange(self.size))

  def is_involution(self) -> bool:
    return bool(np.all(self._forward[self._forward] == np.arange(self.size)))

  def is_fixed_point_free_involution(self) -> bool:
    return self.is_involution() and self.fixed_points().size == 0

  def cycles(self) -> List[Tuple[int, ...]]:
    """Returns the disjoint cycles, each starting at its smallest index."""
    seen = np.zeros(self.size, dtype=bool)
    result = []
    for start in range(self.size):
      if seen[start]:
        continue
      cycle = []
      x = start
      while not seen[x]:
        seen[x] = True
        cycle.append(x)
        x = int(self._forward[x])
      result.append(tuple(cycle))
    return result

  def transpositions(self) -> List[Tuple[int, int]]:
    """Returns the 2-cycles `(a, b)` with `a < b`, for involutions."""
    if not self.is_involution():
      raise ValueError('Only involutions decompose into disjoint pairs.')
    return [c for c in self.cycles() if len(c) == 2]

  def to_letters(self, alphabet: Alphabet = alphabet_lib.LATIN) -> str:
    return alphabet.decode(self._forward)

  def __eq__(self, other) -> bool:
    if not isinstance(other, Permutation):
      return NotImplemented
    return bool(np.array_equal(self._forward, other.forward))

  def __hash__(self) -> int:
    return hash(self._forward.tobytes())

  def __repr__(self) -> str:
    return f'Permutation({self._forward.tolist()})'
