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
"""Transposition and substitution ciphers of antiquity.

The scytale is a columnar transposition; Atbash, Albam and Caesar are
monoalphabetic substitutions; Vigenère is a periodic sequence of Caesar shifts.
All functions take strings that are already normalized to the alphabet (see
`Alphabet.normalize`).
"""

import dataclasses

from banbury._src.utils import alphabet as alphabet_lib
from banbury._src.utils import permutation as permutation_lib
import numpy as np

Alphabet = alphabet_lib.Alphabet
Permutation = permutation_lib.Permutation


def _check_message(text: str) -> None:
  if not text:
    raise ValueError('Cannot process an empty message.')


def _check_width(width: int) -> None:
  if width < 1:
    raise ValueError(f'Got an invalid width {width}; `width` must be >= 1.')


def scytale_encipher(plaintext: str, width: int) -> str:
  """Writes `plaintext` in rows of `width` letters and reads it by columns.

  When the length is not a multiple of `width`, the last row is short and the
  absent cells are skipped on the column read.

  Args:
    plaintext: the message.
    width: the number of letters per row, i.e. the number of columns.

  Returns:
    The ciphertext.
  """
  _check_message(plaintext)
  _check_width(width)
  return ''.join(plaintext[c::width] for c in range(width))


def scytale_decipher(ciphertext: str, width: int) -> str:
  """Inverts `scytale_encipher` for the same `width`."""
  _check_message(ciphertext)
  _check_width(width)
  n = len(ciphertext)
  rows, long_columns = divmod(n, width)
  # Columns `0..long_columns-1` hold one letter more than the others.
  plaintext = [''] * n
  start = 0
  for c in range(width):
    height = rows + (1 if c < long_columns else 0)
    for r in range(height):
      plaintext[r * width + c] = ciphertext[start + r]
    start += height
  return ''.join(plaintext)


@dataclasses.dataclass(frozen=True)
class SubstitutionKey:
  """A monoalphabetic substitution: a permutation of the alphabet."""

  mapping: Permutation
  alphabet: Alphabet = alphabet_lib.LATIN

  def __post_init__(self):
    if self.mapping.size != self.alphabet.size:
      raise ValueError(
          f'`mapping` has size {self.mapping.size} but the alphabet has '
          f'{self.alphabet.size} letters.')

  def compose(self, other: 'SubstitutionKey') -> 'SubstitutionKey':
    """Returns the key enciphering with `other` first, then with `self`."""
    return SubstitutionKey(self.mapping.compose(other.mapping), self.alphabet)

  @property
  def inverse(self) -> 'SubstitutionKey':
    return SubstitutionKey(self.mapping.inverse, self.alphabet)

  def __str__(self) -> str:
    return self.mapping.to_letters(self.alphabet)


def caesar_key(shift: int,
               alphabet: Alphabet = alphabet_lib.LATIN) -> SubstitutionKey:
  """Returns the key moving each letter `shift` places forward.

  The shift is normalized modulo the alphabet size. Note that Suetonius'
  "step 4" substitution `A -> D` is `caesar_key(3)`.

  Args:
    shift: any integer.
    alphabet: the alphabet to shift within.

  Returns:
    The substitution key.
  """
  n = alphabet.size
  return SubstitutionKey(
      Permutation((np.arange(n) + shift) % n), alphabet)


def atbash_key(alphabet: Alphabet = alphabet_lib.LATIN) -> SubstitutionKey:
  """Returns the key reversing the alphabet: `A <-> Z`, `B <-> Y`, ..."""
  n = alphabet.size
  return SubstitutionKey(Permutation(np.arange(n)[::-1]), alphabet)


def albam_key(alphabet: Alphabet = alphabet_lib.LATIN) -> SubstitutionKey:
  """Returns the key swapping the two halves of the alphabet: `A <-> N`, ..."""
  if alphabet.size % 2:
    raise ValueError(
        f'Albam needs an alphabet of even size, got {alphabet.size}.')
  return caesar_key(alphabet.size // 2, alphabet)


def mono_encipher(plaintext: str, key: SubstitutionKey) -> str:
  return key.alphabet.decode(key.mapping(key.alphabet.encode(plaintext)))


def mono_decipher(ciphertext: str, key: SubstitutionKey) -> str:
  return mono_encipher(ciphertext, key.inverse)


def _vigenere(text: str, key: str, sign: int, alphabet: Alphabet) -> str:
  if not key:
    raise ValueError('The Vigenère key must not be empty.')
  letters = alphabet.encode(text)
  shifts = np.resize(alphabet.encode(key), letters.size)
  return alphabet.decode((letters + sign * shifts) % alphabet.size)


def vigenere_encipher(plaintext: str,
                      key: str,
                      alphabet: Alphabet = alphabet_lib.LATIN) -> str:
  """Shifts letter `i` by `key[i mod len(key)]`, reading `A` as 0."""
  return _vigenere(plaintext, key, 1, alphabet)


def vigenere_decipher(ciphertext: str,
                      key: str,
                      alphabet: Alphabet = alphabet_lib.LATIN) -> str:
  return _vigenere(ciphertext, key, -1, alphabet)
