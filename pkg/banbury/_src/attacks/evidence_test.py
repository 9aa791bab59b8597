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
"""Tests for `evidence.py`."""

import os

from absl.testing import absltest
from absl.testing import parameterized

from banbury._src.attacks import banburismus
from banbury._src.attacks import evidence
from banbury._src.enigma import catalogue
from banbury._src.enigma import machine
from banbury._src.protocol import indicator
from banbury._src.protocol import keysheet
from banbury._src.protocol import traffic
from banbury._src.utils import errors
from banbury._src.utils import seeding

LETTERS = 'ABCDEFGHIJKLMNOPQRSTUVWXYZ'


def _row(pair_id, shift, weight):
  return evidence.EvidenceRow(pair_id, shift, (), 0, 50, weight)


def _day(n, seed=0):
  daily = keysheet.random_daily_key(seeding.stream(seed, 'evidence_test'))
  day = traffic.sample_day(seeding.stream(seed, 'traffic'), daily, n=n)
  return daily, day


class PairIdTest(parameterized.TestCase):

  def test_round_trip(self):
    first = indicator.Intercept('PMG', 'ABCDE', '0001')
    second = indicator.Intercept('PMQ', 'ABCDE', '0007')
    identifier = evidence.pair_id(first, second)
    self.assertEqual(identifier, '0001:PMG/0007:PMQ')
    self.assertEqual(evidence.pair_letters(identifier), ('G', 'Q'))

  @parameterized.parameters('0001:PMG', '0001:PM/0002:PMQ', 'PMG/PMQ',
                            'a:PMG/b:PMQ/c:PMX')
  def test_malformed(self, identifier):
    with self.assertRaisesRegex(errors.BanburyError, 'Malformed'):
      evidence.pair_letters(identifier)


class AggregateDeductionsTest(absltest.TestCase):

  def test_positive_shift(self):
    rows = [_row('1:PMG/2:PMQ', 5, 30.), _row('1:PMG/2:PMQ', 3, 2.)]
    (d,) = evidence.aggregate_deductions(rows)
    self.assertEqual((d.letter_a, d.letter_b, d.offset, d.weight),
                     ('Q', 'G', 5, 30.))

  def test_negative_shift(self):
    rows = [_row('1:PMG/2:PMQ', -4, 30.)]
    (d,) = evidence.aggregate_deductions(rows)
    self.assertEqual((d.letter_a, d.letter_b, d.offset), ('G', 'Q', 4))

  def test_swapped_pairs_add_up(self):
    rows = [_row('1:PMG/2:PMQ', 5, 15.), _row('3:ABQ/4:ABG', -5, 15.),
            _row('3:ABQ/4:ABG', 5, 4.)]
    (d,) = evidence.aggregate_deductions(rows)
    self.assertEqual(str(d), 'Q=G+5')
    self.assertEqual(d.weight, 30.)

  def test_threshold_and_margin(self):
    config = evidence.DeductionConfig(threshold=25., margin=6.)
    close = [_row('1:PMG/2:PMQ', 5, 30.), _row('1:PMG/2:PMQ', 7, 27.)]
    self.assertEqual(evidence.aggregate_deductions(close, config), [])
    weak = [_row('1:PMG/2:PMQ', 5, 20.)]
    self.assertEqual(evidence.aggregate_deductions(weak, config), [])
    relaxed = evidence.DeductionConfig(threshold=10., margin=2.)
    self.assertLen(evidence.aggregate_deductions(close, relaxed), 1)

  def test_equal_third_letters_are_skipped(self):
    rows = [_row('1:PMG/2:ABG', 5, 30.)]
    self.assertEqual(evidence.aggregate_deductions(rows), [])

  def test_invalid_config(self):
    with self.assertRaisesRegex(ValueError, 'margin'):
      evidence.DeductionConfig(margin=-1.)


class ScoreCorpusTest(absltest.TestCase):

  def test_rows_follow_pair_candidates(self):
    _, day = _day(40)
    rows = evidence.score_corpus(day.intercepts)
    pairs = banburismus.pair_candidates(day.intercepts)
    self.assertNotEmpty(pairs)
    ids = []
    for row in rows:
      if not ids or ids[-1] != row.pair_id:
        ids.append(row.pair_id)
    self.assertEqual(ids, [evidence.pair_id(a, b) for a, b in pairs])
    first = [r for r in rows if r.pair_id == ids[0]]
    self.assertLen(first, 50)
    self.assertEqual([r.weight for r in first],
                     sorted((r.weight for r in first), reverse=True))

  def test_workers_do_not_change_the_result(self):
    _, day = _day(40)
    self.assertEqual(evidence.score_corpus(day.intercepts, jobs=4),
                     evidence.score_corpus(day.intercepts))

  def test_invalid_jobs(self):
    with self.assertRaisesRegex(ValueError, 'jobs'):
      evidence.score_corpus([], jobs=0)

  def test_deductions_from_a_day_are_mostly_right(self):
    daily, day = _day(200, seed=1)
    cat = catalogue.builtin_catalogue()
    state = machine.positions_after(daily.machine(cat), 2)
    cipher = state.cipher_alphabet_at().forward
    rows = evidence.score_corpus(
        day.intercepts, banburismus.ScoreConfig(use_bonus=False), jobs=2)
    deductions = evidence.aggregate_deductions(rows)
    self.assertGreaterEqual(len(deductions), 3)
    right = 0
    for d in deductions:
      key_a = cipher[LETTERS.index(d.letter_a)]
      key_b = cipher[LETTERS.index(d.letter_b)]
      right += int((key_a - key_b) % 26 == d.offset)
    self.assertGreaterEqual(right, 0.75 * len(deductions))


class TablesTest(absltest.TestCase):

  def test_evidence_file(self):
    path = os.path.join(self.create_tempdir().full_path, 'evidence.tsv')
    rows = [evidence.EvidenceRow('1:PMG/2:PMQ', 9, (1, 2, 1), 4, 56, 1.25),
            evidence.EvidenceRow('1:PMG/2:PMQ', -3, (), 0, 60, -6.5)]
    evidence.store_evidence(rows, path)
    self.assertEqual(evidence.load_evidence(path), rows)
    with open(path) as f:
      self.assertEqual(f.readlines()[1],
                       '1:PMG/2:PMQ\t9\t1,2,1\t4\t56\t1.2500\n')

  def test_deductions_file(self):
    path = os.path.join(self.create_tempdir().full_path, 'deductions.tsv')
    deductions = [evidence.Deduction('G', 'K', 4, 12.5)]
    evidence.store_deductions(deductions, path)
    self.assertEqual(evidence.load_deductions(path), deductions)

  def test_read_deductions_accepts_evidence(self):
    lines = evidence.serialize_evidence([_row('1:PMG/2:PMQ', 5, 30.)])
    self.assertEqual([str(d) for d in evidence.read_deductions(lines)],
                     ['Q=G+5'])
    self.assertEqual(evidence.read_deductions([]), [])

  def test_malformed_lines(self):
    with self.assertRaises(errors.RecordError) as cm:
      evidence.parse_evidence(['1:PMG/2:PMQ\t9\t1\t1\t56\t1.0',
                               '1:PMG/2:PMQ\tnine\t1\t1\t56\t1.0'])
    self.assertEqual(cm.exception.line_number, 2)
    with self.assertRaises(errors.RecordError) as cm:
      evidence.parse_deductions(['G\tG\t4\t1.0'])
    self.assertEqual(cm.exception.line_number, 1)


if __name__ == '__main__':
  absltest.main()
