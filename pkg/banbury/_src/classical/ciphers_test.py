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
"""Tests for `ciphers.py`."""

import string

from absl.testing import absltest
from absl.testing import parameterized

from banbury._src.classical import ciphers
from banbury._src.utils import alphabet
from banbury._src.utils import errors
import hypothesis
from hypothesis import strategies as st
import numpy as np

_LETTERS = st.text(alphabet=string.ascii_uppercase, min_size=1, max_size=200)


class ScytaleTest(parameterized.TestCase):

  @parameterized.named_parameters(
      ('domani', 'DOMANIPARTIREMO', 5, 'DIIOPRMAEARMNTO'),
      ('width_one', 'ABC', 1, 'ABC'),
      ('single_row', 'ABCD', 4, 'ABCD'),
      ('ragged', 'ABCDEFG', 3, 'ADGBECF'),
      ('wider_than_message', 'AB', 5, 'AB'),
  )
  def test_vectors(self, plaintext, width, ciphertext):
    self.assertEqual(ciphers.scytale_encipher(plaintext, width), ciphertext)
    self.assertEqual(ciphers.scytale_decipher(ciphertext, width), plaintext)

  @hypothesis.settings(max_examples=1000, deadline=None)
  @hypothesis.given(text=_LETTERS, width=st.integers(min_value=1,
                                                     max_value=30))
  def test_round_trip(self, text, width):
    self.assertEqual(
        ciphers.scytale_decipher(ciphers.scytale_encipher(text, width), width),
        text)

  def test_errors(self):
    with self.assertRaisesRegex(ValueError, 'empty message'):
      ciphers.scytale_encipher('', 3)
    with self.assertRaisesRegex(ValueError, 'invalid width'):
      ciphers.scytale_decipher('ABC', 0)


class SubstitutionTest(parameterized.TestCase):

  def test_atbash(self):
    key = ciphers.atbash_key()
    self.assertEqual(ciphers.mono_encipher('BABILONIA', key), 'YZYROLMRZ')
    self.assertEqual(ciphers.mono_encipher('AD', key), 'ZW')
    self.assertEqual(key.compose(key), ciphers.caesar_key(0))

  def test_caesar_step_four(self):
    key = ciphers.caesar_key(3)
    self.assertEqual(ciphers.mono_encipher('VENIVIDIVICI', key),
                     'YHQLYLGLYLFL')
    self.assertEqual(ciphers.mono_decipher('YHQLYLGLYLFL', key),
                     'VENIVIDIVICI')

  def test_albam(self):
    self.assertEqual(
        ciphers.mono_encipher('BABILONIA', ciphers.albam_key()), 'ONOVYBAVN')
    self.assertEqual(ciphers.albam_key(), ciphers.caesar_key(13))
    with self.assertRaisesRegex(ValueError, 'even size'):
      ciphers.albam_key(alphabet.Alphabet('ABC'))

  def test_caesar_identity_and_normalization(self):
    self.assertEqual(str(ciphers.caesar_key(0)), string.ascii_uppercase)
    self.assertEqual(ciphers.caesar_key(29), ciphers.caesar_key(3))
    self.assertEqual(ciphers.caesar_key(-1), ciphers.caesar_key(25))

  @parameterized.parameters((1, 2), (13, 13), (20, 10), (0, 25))
  def test_caesar_composition(self, s1, s2):
    self.assertEqual(
        ciphers.caesar_key(s1).compose(ciphers.caesar_key(s2)),
        ciphers.caesar_key((s1 + s2) % 26))

  def test_letter_outside_alphabet(self):
    with self.assertRaisesRegex(errors.AlphabetError, 'position 4'):
      ciphers.mono_encipher('ABCDé', ciphers.atbash_key())

  @hypothesis.settings(max_examples=1000, deadline=None)
  @hypothesis.given(text=_LETTERS, seed=st.integers(0, 2**31 - 1))
  def test_mono_round_trip_preserves_frequencies(self, text, seed):
    mapping = np.random.RandomState(seed).permutation(26)
    key = ciphers.SubstitutionKey(ciphers.Permutation(mapping))
    ciphertext = ciphers.mono_encipher(text, key)
    self.assertEqual(ciphers.mono_decipher(ciphertext, key), text)
    counts = lambda t: sorted(t.count(c) for c in set(t))
    self.assertEqual(counts(ciphertext), counts(text))


class VigenereTest(parameterized.TestCase):

  def test_lupo(self):
    self.assertEqual(ciphers.vigenere_encipher('VENIVIDIVICI', 'LUPO'),
                     'GYCWGCSWGCRW')
    self.assertEqual(ciphers.vigenere_decipher('GYCWGCSWGCRW', 'LUPO'),
                     'VENIVIDIVICI')

  def test_zero_shift(self):
    self.assertEqual(ciphers.vigenere_encipher('ATTACCO', 'A'), 'ATTACCO')

  def test_empty_key(self):
    with self.assertRaisesRegex(ValueError, 'must not be empty'):
      ciphers.vigenere_encipher('ABC', '')

  @hypothesis.settings(max_examples=1000, deadline=None)
  @hypothesis.given(text=_LETTERS, key=_LETTERS)
  def test_round_trip(self, text, key):
    self.assertEqual(
        ciphers.vigenere_decipher(ciphers.vigenere_encipher(text, key), key),
        text)


if __name__ == '__main__':
  absltest.main()
