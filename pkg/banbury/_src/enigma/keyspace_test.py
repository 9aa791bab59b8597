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
"""Tests for `keyspace.py`."""

import math

from absl.testing import absltest
from absl.testing import parameterized

from banbury._src.enigma import keyspace


class KeyspaceTest(parameterized.TestCase):

  def test_rotor_orders(self):
    orders = keyspace.rotor_orders(['I', 'II', 'III', 'IV', 'V'], 3)
    self.assertLen(orders, 60)
    self.assertLen(set(orders), 60)
    self.assertIn(('II', 'V', 'III'), orders)

  def test_ten_plug_pairs(self):
    pairings = keyspace.plugboard_pairings(26, 10)
    self.assertEqual(
        pairings,
        math.factorial(26) //
        (math.factorial(6) * math.factorial(10) * 2**10))
    self.assertEqual(pairings, 150738274937250)
    self.assertAlmostEqual(pairings / 1.5e14, 1., delta=0.01)

  @parameterized.parameters((26, 0, 1), (26, 1, 325), (4, 2, 3), (6, 3, 15))
  def test_small_pairings(self, n, k, expected):
    self.assertEqual(keyspace.plugboard_pairings(n, k), expected)

  def test_full_keyspace(self):
    size = keyspace.keyspace_size(keyspace.MachineModel())
    self.assertEqual(size, 60 * 26**6 * 150738274937250)
    self.assertAlmostEqual(size / 2.8e24, 1., delta=0.05)

  def test_toy_keyspace(self):
    model = keyspace.MachineModel(
        available_rotors=3, chosen_rotors=3, plug_pairs=2, alphabet_size=6)
    self.assertEqual(keyspace.keyspace_size(model), 6 * 6**6 * 45)

  @parameterized.named_parameters(
      ('too_many_rotors', dict(chosen_rotors=6)),
      ('too_many_plugs', dict(plug_pairs=14)),
      ('tiny_alphabet', dict(alphabet_size=1, plug_pairs=0)),
  )
  def test_invalid_model(self, kwargs):
    with self.assertRaises(ValueError):
      keyspace.MachineModel(**kwargs)

  def test_invalid_counts(self):
    with self.assertRaises(ValueError):
      keyspace.plugboard_pairings(26, 14)
    with self.assertRaises(ValueError):
      keyspace.rotor_orders(['I', 'II'], 3)


if __name__ == '__main__':
  absltest.main()
