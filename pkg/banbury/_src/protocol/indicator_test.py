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
"""Tests for `indicator.py`."""

from absl.testing import absltest

from banbury._src.enigma import catalogue
from banbury._src.enigma import machine
from banbury._src.protocol import indicator
from banbury._src.protocol import keysheet
from banbury._src.utils import errors
from banbury._src.utils import seeding
import jax
import numpy as np

_DAILY = keysheet.DailyKey(('II', 'V', 'III'), 'DQX', 'QXT',
                           ('AB', 'CD', 'EF', 'GH', 'IJ', 'KL'))


class IndicatorTest(absltest.TestCase):

  def test_round_trip(self):
    key = seeding.stream(0, 'indicator_test')
    rng = np.random.RandomState(0)
    alphabet = catalogue.builtin_catalogue().alphabet
    for i in range(1000):
      daily = keysheet.random_daily_key(seeding.item(key, i // 10))
      message_key = alphabet.decode(rng.randint(26, size=3))
      plaintext = alphabet.decode(rng.randint(26, size=rng.randint(1, 60)))
      intercept = indicator.transmit(daily, message_key, plaintext,
                                     doubled=bool(i % 2))
      self.assertEqual(indicator.receive(daily, intercept), plaintext)
      self.assertEqual(indicator.message_key_of(daily, intercept),
                       message_key)

  def test_indicator_is_message_key_at_ground_setting(self):
    intercept = indicator.transmit(_DAILY, 'PMG', 'ANGRIFF')
    expected, _ = machine.encipher_message(
        _DAILY.machine(catalogue.builtin_catalogue()), 'PMG')
    self.assertEqual(intercept.indicator, expected)
    self.assertFalse(intercept.doubled)

  def test_shared_key_prefix_gives_shared_indicator_prefix(self):
    indicators = {
        indicator.transmit(_DAILY, 'PM' + c, 'ANGRIFF').indicator
        for c in 'ABCDEFGHIJKLMNOPQRSTUVWXYZ'
    }
    self.assertLen({i[:2] for i in indicators}, 1)
    self.assertLen(indicators, 26)

  def test_doubled_indicator(self):
    intercept = indicator.transmit(_DAILY, 'XYZ', 'ANGRIFF', doubled=True)
    self.assertLen(intercept.indicator, 6)
    self.assertTrue(intercept.doubled)
    typed, _ = machine.decipher_message(
        _DAILY.machine(catalogue.builtin_catalogue()), intercept.indicator)
    self.assertEqual(typed, 'XYZXYZ')

  def test_tampered_indicator(self):
    intercept = indicator.transmit(_DAILY, 'XYZ', 'ANGRIFF', doubled=True)
    last = 'A' if intercept.indicator[-1] != 'A' else 'B'
    tampered = indicator.Intercept(intercept.indicator[:5] + last,
                                   intercept.body)
    with self.assertRaisesRegex(errors.IndicatorMismatchError, 'disagree'):
      indicator.receive(_DAILY, tampered)

  def test_tampered_body_still_deciphers(self):
    intercept = indicator.transmit(_DAILY, 'XYZ', 'ANGRIFFXUMXFUENF')
    body = intercept.body[:3] + ('A' if intercept.body[3] != 'A' else 'B')
    tampered = indicator.Intercept(intercept.indicator,
                                   body + intercept.body[4:])
    plaintext = indicator.receive(_DAILY, tampered)
    expected = 'ANGRIFFXUMXFUENF'
    self.assertEqual(plaintext[:3] + plaintext[4:],
                     expected[:3] + expected[4:])
    self.assertNotEqual(plaintext[3], expected[3])

  def test_wrong_daily_key_breaks_doubled_indicator(self):
    key = seeding.stream(1, 'indicator_test')
    intercept = indicator.transmit(_DAILY, 'XYZ', 'ANGRIFF', doubled=True)
    mismatches = 0
    for i in range(200):
      wrong = keysheet.random_daily_key(seeding.item(key, i))
      try:
        indicator.message_key_of(wrong, intercept)
      except errors.IndicatorMismatchError:
        mismatches += 1
    self.assertGreaterEqual(mismatches, 190)

  def test_toy_machine(self):
    toy = catalogue.builtin_catalogue('toy')
    daily = keysheet.random_daily_key(jax.random.PRNGKey(5), toy, num_plugs=2)
    intercept = indicator.transmit(daily, 'CAT', 'CIAOCIAO', toy)
    self.assertEqual(indicator.receive(daily, intercept, toy), 'CIAOCIAO')

  def test_invalid_intercepts(self):
    with self.assertRaisesRegex(errors.BanburyError, 'empty body'):
      indicator.Intercept('ABC', '')
    with self.assertRaisesRegex(errors.BanburyError, 'expected 3 or 6'):
      indicator.Intercept('ABCD', 'XYZ')

  def test_bad_message_key(self):
    with self.assertRaisesRegex(errors.BanburyError, '3 letters'):
      indicator.transmit(_DAILY, 'AB', 'ANGRIFF')
    with self.assertRaises(errors.AlphabetError):
      indicator.transmit(_DAILY, 'AB1', 'ANGRIFF')


if __name__ == '__main__':
  absltest.main()
