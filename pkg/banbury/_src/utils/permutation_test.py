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
"""Tests for `permutation.py`."""

from absl.testing import absltest
from absl.testing import parameterized

from banbury._src.utils import alphabet
from banbury._src.utils import permutation
import numpy as np

Permutation = permutation.Permutation


class PermutationTest(parameterized.TestCase):

  def test_inverse_is_cached(self):
    p = Permutation([2, 0, 1])
    np.testing.assert_array_equal(p.inverse.forward, [1, 2, 0])
    self.assertIs(p.inverse, p.inverse)
    self.assertIs(p.inverse.inverse, p)

  def test_forward_is_read_only(self):
    p = Permutation([1, 0])
    with self.assertRaises(ValueError):
      p.forward[0] = 0

  def test_composition_applies_right_first(self):
    p = Permutation([1, 2, 0])
    q = Permutation([0, 2, 1])
    for x in range(3):
      self.assertEqual(int((p @ q)(x)), int(p(q(x))))

  def test_composition_is_associative(self):
    rng = np.random.RandomState(0)
    p, q, r = (Permutation(rng.permutation(26)) for _ in range(3))
    self.assertEqual((p @ q) @ r, p @ (q @ r))
    self.assertEqual(p @ p.inverse, Permutation.identity(26))

  def test_conjugate(self):
    rng = np.random.RandomState(1)
    p = Permutation(rng.permutation(26))
    by = Permutation(rng.permutation(26))
    self.assertEqual(p.conjugate(by), by @ p @ by.inverse)

  def test_from_letters(self):
    p = Permutation.from_letters('ZYXWVUTSRQPONMLKJIHGFEDCBA')
    self.assertTrue(p.is_fixed_point_free_involution())
    self.assertEqual(p.to_letters(), 'ZYXWVUTSRQPONMLKJIHGFEDCBA')

  def test_from_pairs(self):
    p = Permutation.from_pairs([(0, 3), (1, 4)], 6)
    np.testing.assert_array_equal(p.forward, [3, 4, 2, 0, 1, 5])
    np.testing.assert_array_equal(p.fixed_points(), [2, 5])
    self.assertEqual(p.transpositions(), [(0, 3), (1, 4)])

  def test_cycles(self):
    p = Permutation([1, 2, 0, 4, 3, 5])
    self.assertEqual(p.cycles(), [(0, 1, 2), (3, 4), (5,)])
    self.assertFalse(p.is_involution())
    with self.assertRaisesRegex(ValueError, 'Only involutions'):
      p.transpositions()

  @parameterized.named_parameters(
      ('repeated', [0, 0, 1]),
      ('out_of_range', [0, 3, 1]),
      ('negative', [-1, 0]),
      ('empty', []),
  )
  def test_rejects_non_bijections(self, forward):
    with self.assertRaises(ValueError):
      Permutation(forward)

  def test_size_mismatch(self):
    with self.assertRaisesRegex(ValueError, 'sizes 3 and 2'):
      Permutation.identity(3) @ Permutation.identity(2)

  def test_wrong_wiring_length(self):
    with self.assertRaisesRegex(ValueError, 'expected 6'):
      Permutation.from_letters('ACI', alphabet.TOY)

  def test_hash_and_equality(self):
    self.assertEqual(hash(Permutation([1, 0])), hash(Permutation([1, 0])))
    self.assertNotEqual(Permutation([1, 0]), Permutation.identity(2))
    self.assertEqual(repr(Permutation([1, 0])), 'Permutation([1, 0])')


if __name__ == '__main__':
  absltest.main()
