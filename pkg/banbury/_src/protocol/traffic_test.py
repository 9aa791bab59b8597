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
"""Tests for `traffic.py`."""

import os

from absl.testing import absltest
from absl.testing import parameterized

from banbury._src.enigma import catalogue
from banbury._src.protocol import indicator
from banbury._src.protocol import keysheet
from banbury._src.protocol import traffic
import jax
import numpy as np

_DAILY = keysheet.DailyKey(('II', 'V', 'III'), 'DQX', 'QXT',
                           ('AB', 'CD', 'EF', 'GH', 'IJ', 'KL'))


class PrepareTest(parameterized.TestCase):

  @parameterized.named_parameters(
      ('spaces', 'Angriff um 5 Uhr', 'ANGRIFFXUMXFUENFXUHR'),
      ('punctuation', 'Wetter: klar.', 'WETTERXKLAR'),
      ('numbers', '17', 'EINSSIEBEN'),
      ('empty', ' ., ', ''),
  )
  def test_prepare_plaintext(self, text, expected):
    self.assertEqual(traffic.prepare_plaintext(text), expected)


class TrafficTest(parameterized.TestCase):

  def test_plaintext_coincidence_rate(self):
    source = traffic.PlaintextSource(traffic.TrafficModel())
    first = source.sample(jax.random.PRNGKey(0), 100_000)
    second = source.sample(jax.random.PRNGKey(1), 100_000)
    self.assertAlmostEqual(
        traffic.match_rate([first], [second]), 1. / 17, delta=0.01)

  def test_letter_probabilities(self):
    probs = traffic.letter_probabilities(traffic.TrafficModel())
    np.testing.assert_allclose(probs.sum(), 1.)
    np.testing.assert_allclose(np.sum(probs**2), 1. / 17)

  def test_independent_ciphertexts_match_at_random_rate(self):
    model = traffic.TrafficModel(cluster_fraction=0.)
    day = traffic.sample_day(jax.random.PRNGKey(0), _DAILY, model, n=400)
    first, second = [], []
    for i in range(0, 400, 2):
      if day.message_keys[i] != day.message_keys[i + 1]:
        first.append(day.intercepts[i].body)
        second.append(day.intercepts[i + 1].body)
    self.assertAlmostEqual(
        traffic.match_rate(first, second), 1. / 26, delta=0.005)

  def test_day_is_consistent(self):
    day = traffic.sample_day(jax.random.PRNGKey(2), _DAILY, n=50)
    self.assertLen(day.intercepts, 50)
    for i, intercept in enumerate(day.intercepts):
      self.assertEqual(intercept.message_id, f'{i:04d}')
      self.assertEqual(indicator.receive(_DAILY, intercept),
                       day.plaintexts[i])
      self.assertEqual(indicator.message_key_of(_DAILY, intercept),
                       day.message_keys[i])
      self.assertBetween(len(intercept.body), 130, 230)

  def test_clustering(self):
    model = traffic.TrafficModel(cluster_fraction=0.5)
    day = traffic.sample_day(jax.random.PRNGKey(3), _DAILY, model, n=200)
    prefixes = [k[:2] for k in day.message_keys]
    most_common = max(set(prefixes), key=prefixes.count)
    self.assertGreater(prefixes.count(most_common), 60)
    shared = [i.indicator[:2] for i, p in zip(day.intercepts, prefixes)
              if p == most_common]
    self.assertLen(set(shared), 1)

  def test_single_message(self):
    intercepts = traffic.generate_day_traffic(_DAILY, n=1, seed=4)
    self.assertLen(intercepts, 1)

  def test_reproducible(self):
    first = traffic.generate_day_traffic(_DAILY, n=5, seed=42)
    second = traffic.generate_day_traffic(_DAILY, n=5, seed=42)
    other = traffic.generate_day_traffic(_DAILY, n=5, seed=43)
    self.assertEqual(first, second)
    self.assertNotEqual(first, other)

  def test_crib_planting(self):
    crib = traffic.CribPlan('WETTERVORHERSAGEBISKAYA', message_index=3,
                            anchor=120)
    day = traffic.sample_day(jax.random.PRNGKey(6), _DAILY, n=5, crib=crib)
    self.assertEqual(day.plaintexts[3][120:143], crib.text)
    self.assertEqual(day.crib, crib)

  def test_crib_outside_day(self):
    with self.assertRaisesRegex(ValueError, 'Cannot plant'):
      traffic.sample_day(jax.random.PRNGKey(0), _DAILY, n=2,
                         crib=traffic.CribPlan('ABC', message_index=2))

  def test_corpus_mode(self):
    path = os.path.join(self.create_tempdir().full_path, 'corpus.txt')
    with open(path, 'w') as f:
      f.write('Wetter klar. Sicht 10 km.\nKeine besonderen Vorkommnisse.\n')
    model = traffic.TrafficModel(
        corpus_path=path, lengths=traffic.LengthDistribution(20, 30))
    day = traffic.sample_day(jax.random.PRNGKey(7), _DAILY, model, n=3)
    corpus = traffic.prepare_plaintext(open(path).read())
    for plaintext in day.plaintexts:
      self.assertIn(plaintext[:10], corpus + corpus)

  def test_toy_traffic_needs_table(self):
    with self.assertRaisesRegex(ValueError, 'table_path'):
      traffic.letter_probabilities(
          traffic.TrafficModel(coincidence_target=0.3),
          catalogue.builtin_catalogue('toy').alphabet)

  @parameterized.named_parameters(
      ('kappa_zero', dict(coincidence_target=0.)),
      ('cluster', dict(cluster_fraction=1.5)),
  )
  def test_invalid_model(self, kwargs):
    with self.assertRaises(ValueError):
      traffic.TrafficModel(**kwargs)

  @parameterized.parameters(0.05, 0.1, 0.5, 1.)
  def test_any_coincidence_target_is_reachable(self, target):
    model = traffic.TrafficModel(coincidence_target=target)
    probs = traffic.letter_probabilities(model)
    np.testing.assert_allclose(probs.sum(), 1.)
    np.testing.assert_allclose(np.sum(probs**2), target, rtol=1e-9)
    self.assertTrue(np.all(probs >= 0))
    day = traffic.sample_day(jax.random.PRNGKey(3), _DAILY, model, n=2)
    self.assertLen(day.intercepts, 2)

  def test_kappa_below_random(self):
    with self.assertRaisesRegex(ValueError, 'must exceed'):
      traffic.letter_probabilities(traffic.TrafficModel(coincidence_target=.03))

  def test_invalid_lengths(self):
    with self.assertRaises(ValueError):
      traffic.LengthDistribution(200, 100)


if __name__ == '__main__':
  absltest.main()
