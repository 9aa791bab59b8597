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
"""Tests for `corpus.py`."""

import os

from absl.testing import absltest
from absl.testing import parameterized

from banbury._src.protocol import corpus
from banbury._src.protocol import indicator
from banbury._src.protocol import keysheet
from banbury._src.protocol import traffic
from banbury._src.utils import errors

_DAILY = keysheet.DailyKey(('I', 'II', 'III'), 'AAA', 'AAA')


class CorpusTest(parameterized.TestCase):

  def test_groups(self):
    self.assertEqual(corpus.to_groups('ABCDEFGHIJKL'), 'ABCDE FGHIJ KL')

  def test_parse(self):
    lines = ['# day', 'm1\tPMG\tTZUYJ ZSLAP EIXM\t0915',
             'm2\tPMQ\tABCDE']
    intercepts = corpus.parse_corpus(lines)
    self.assertEqual(intercepts, [
        indicator.Intercept('PMG', 'TZUYJZSLAPEIXM', 'm1', '0915'),
        indicator.Intercept('PMQ', 'ABCDE', 'm2'),
    ])

  def test_store_then_load(self):
    intercepts = traffic.generate_day_traffic(_DAILY, n=4, seed=1,
                                              doubled=True)
    path = os.path.join(self.create_tempdir().full_path, 'day.tsv')
    corpus.store_corpus(intercepts, path)
    loaded = corpus.load_corpus(path)
    self.assertEqual(loaded, intercepts)
    self.assertTrue(all(i.doubled for i in loaded))

  @parameterized.named_parameters(
      ('duplicate_id', 'a\tABC\tXYZ\na\tABD\tXYZ', 2),
      ('bad_letter', 'a\tABC\tXYZ\nb\tAB1\tXYZ', 2),
      ('empty_body', 'a\tABC\t ', 1),
      ('field_count', 'a\tABC', 1),
      ('indicator_length', 'a\tABCD\tXYZ', 1),
  )
  def test_malformed(self, text, line_number):
    with self.assertRaises(errors.RecordError) as cm:
      corpus.parse_corpus(text.splitlines(), source='day.tsv')
    self.assertEqual(cm.exception.line_number, line_number)


if __name__ == '__main__':
  absltest.main()
