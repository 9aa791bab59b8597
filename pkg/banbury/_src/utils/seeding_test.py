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
"""Tests for `seeding.py`."""

import os
from unittest import mock

from absl.testing import absltest

from banbury._src.utils import seeding
import jax
import numpy as np


class SeedingTest(absltest.TestCase):

  def test_streams_are_reproducible(self):
    np.testing.assert_array_equal(seeding.stream(42, 'traffic'),
                                  seeding.stream(42, 'traffic'))
    np.testing.assert_array_equal(
        seeding.stream(jax.random.PRNGKey(42), 'traffic'),
        seeding.stream(42, 'traffic'))

  def test_streams_differ(self):
    a = seeding.uniform(seeding.stream(42, 'traffic'), (8,))
    b = seeding.uniform(seeding.stream(42, 'bombe'), (8,))
    c = seeding.uniform(seeding.stream(43, 'traffic'), (8,))
    self.assertFalse(np.allclose(a, b))
    self.assertFalse(np.allclose(a, c))

  def test_items(self):
    key = seeding.stream(0, 'messages')
    first = seeding.randint(seeding.item(key, 0), 0, 1000, (4,))
    second = seeding.randint(seeding.item(key, 1), 0, 1000, (4,))
    self.assertFalse(np.array_equal(first, second))
    with self.assertRaises(ValueError):
      seeding.item(key, -1)

  def test_resolve_seed(self):
    with mock.patch.dict(os.environ, {}, clear=True):
      self.assertEqual(seeding.resolve_seed(7), 7)
      self.assertEqual(seeding.resolve_seed(None), 0)
    with mock.patch.dict(os.environ, {seeding.SEED_ENV_VAR: '99'}):
      self.assertEqual(seeding.resolve_seed(7), 99)
    with mock.patch.dict(os.environ, {seeding.SEED_ENV_VAR: 'abc'}):
      with self.assertRaisesRegex(ValueError, 'must be an integer'):
        seeding.resolve_seed(7)

  def test_categorical(self):
    draws = seeding.categorical(
        jax.random.PRNGKey(0), np.array([0., 1., 0.]), (100,))
    self.assertEqual(draws.dtype, np.int64)
    np.testing.assert_array_equal(draws, np.ones(100))

  def test_permutation(self):
    perm = seeding.permutation(jax.random.PRNGKey(0), 26)
    np.testing.assert_array_equal(np.sort(perm), np.arange(26))

  def test_randint_range(self):
    draws = seeding.randint(jax.random.PRNGKey(1), 3, 5, (1000,))
    self.assertEqual(set(draws.tolist()), {3, 4})


if __name__ == '__main__':
  absltest.main()
