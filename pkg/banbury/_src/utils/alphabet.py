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
"""Alphabets and conversion between letters and integer indices."""

import dataclasses
import string
from typing import Dict, Iterable, Union

from banbury._src.utils import errors
import chex
import numpy as np

Array = chex.Array
LetterLike = Union[str, Iterable[int], np.ndarray]


@dataclasses.dataclass(frozen=True)
class Alphabet:
  """An ordered set of distinct symbols.

  Every cipher in Banbury works on integer indices into an alphabet. The
  default alphabet is the 26 uppercase Latin letters; the six-letter toy
  machine uses `ACIOST`.
  """

  letters: str = string.ascii_uppercase

  def __post_init__(self):
    if len(self.letters) < 2:
      raise ValueError(
          f'An alphabet needs at least 2 letters, got `{self.letters}`.')
    if len(set(self.letters)) != len(self.letters):
      raise ValueError(
          f'Alphabet `{self.letters}` contains duplicate letters.')
    index: Dict[str, int] = {c: i for i, c in enumerate(self.letters)}
    object.__setattr__(self, '_index', index)

  @property
  def size(self) -> int:
    return len(self.letters)

  def __len__(self) -> int:
    return len(self.letters)

  def __contains__(self, letter: str) -> bool:
    return letter in self._index

  def index(self, letter: str, position: int = 0) -> int:
    """Returns the index of `letter`, raising `AlphabetError` if absent."""
    try:
      return self._index[letter]
    except KeyError:
      raise errors.AlphabetError(
          f'Letter `{letter}` at position {position} is not in the alphabet '
          f'`{self.letters}`.') from None

  def letter(self, index: int) -> str:
    return self.letters[int(index) % self.size]

  def encode(self, text: LetterLike) -> np.ndarray:
    """Converts a string of letters to an int array of indices.

    Non-string inputs are assumed to be indices already and are validated.

    Args:
      text: a string over this alphabet, or a sequence of indices.

    Returns:
      A 1-D `int64` array of indices.
    """
    if isinstance(text, str):
      return np.fromiter(
          (self.index(c, i) for i, c in enumerate(text)),
          dtype=np.int64, count=len(text))
    indices = np.asarray(text, dtype=np.int64).reshape(-1)
    bad = np.flatnonzero((indices < 0) | (indices >= self.size))
    if bad.size:
      raise errors.AlphabetError(
          f'Index {indices[bad[0]]} at position {bad[0]} is out of range for '
          f'an alphabet of size {self.size}.')
    return indices

  def decode(self, indices: Array) -> str:
    """Converts an array of indices back to a string."""
    return ''.join(self.letters[i] for i in np.asarray(indices).reshape(-1))

  def normalize(self, text: str) -> str:
    """Uppercases `text` and strips everything that is not a letter.

    Spaces and punctuation are carried only visually in historical traffic,
    e.g. `VENI VIDI VICI` is enciphered as `VENIVIDIVICI`.

    Args:
      text: free text.

    Returns:
      The letters of `text` that belong to this alphabet, uppercased.
    """
    return ''.join(c for c in text.upper() if c in self._index)


LATIN = Alphabet()
TOY = Alphabet('ACIOST')
