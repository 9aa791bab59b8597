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
"""Tests for `scritchmus.py`."""

from absl.testing import absltest
from absl.testing import parameterized

from banbury._src.attacks import scritchmus
from banbury._src.enigma import catalogue
from banbury._src.enigma import machine
from banbury._src.protocol import keysheet
from banbury._src.utils import errors
from banbury._src.utils import oracles
from banbury._src.utils import seeding
import numpy as np

LETTERS = 'ABCDEFGHIJKLMNOPQRSTUVWXYZ'
ALPHABET = 'RGFMJCBTUEXZDQWYNAVHISOKPL'


def _deductions(*texts):
  return [scritchmus.Deduction.parse(t, weight=20. - i)
          for i, t in enumerate(texts)]


def _chain(*texts):
  chains, dropped = scritchmus.build_chains(_deductions(*texts))
  assert len(chains) == 1 and not dropped
  return chains[0]


class DeductionTest(parameterized.TestCase):

  def test_parse(self):
    d = scritchmus.Deduction.parse('G=K+4', weight=12.)
    self.assertEqual((d.letter_a, d.letter_b, d.offset, d.weight),
                     ('G', 'K', 4, 12.))
    self.assertEqual(str(d), 'G=K+4')

  def test_negative_offset_swaps_letters(self):
    d = scritchmus.Deduction.parse(' B = N - 24 ')
    self.assertEqual((d.letter_a, d.letter_b, d.offset), ('N', 'B', 24))

  @parameterized.parameters('G=K', 'GK+4', 'G=K*4', '')
  def test_unparsable(self, text):
    with self.assertRaisesRegex(errors.BanburyError, 'Cannot parse'):
      scritchmus.Deduction.parse(text)

  def test_invalid(self):
    with self.assertRaisesRegex(errors.BanburyError, 'different letters'):
      scritchmus.Deduction('A', 'A', 3)
    with self.assertRaisesRegex(errors.BanburyError, 'positive'):
      scritchmus.Deduction('A', 'B', 0)


class BuildChainsTest(parameterized.TestCase):

  @parameterized.named_parameters(
      ('vkg', ('G=K+4', 'G=V+9'), 'V----K---G'),
      ('mcq', ('M=Q+16', 'C=Q+18'), 'M-C-------Q'),
      ('single', ('A=B+1',), 'BA'),
  )
  def test_worked_chains(self, texts, drawing):
    chain = _chain(*texts)
    self.assertEqual(str(chain), drawing)
    self.assertEqual(chain.elements[0][1], 0)
    self.assertLen(chain.deductions, len(texts))

  def test_separate_chains_heaviest_first(self):
    chains, _ = scritchmus.build_chains(
        _deductions('M=Q+16', 'G=K+4', 'G=V+9', 'C=Q+18'))
    self.assertEqual([str(c) for c in chains], ['M-C-------Q', 'V----K---G'])
    self.assertEqual(chains[0].weight, 20. + 17.)

  def test_light_deductions_are_ignored(self):
    deductions = [scritchmus.Deduction.parse('A=B+1', weight=3.)]
    self.assertEqual(scritchmus.build_chains(deductions), ([], []))

  def test_contradiction_drops_weakest(self):
    chains, dropped = scritchmus.build_chains(
        _deductions('A=B+1', 'C=B+2', 'C=A+3'))
    self.assertEqual([str(c) for c in chains], ['BAC'])
    self.assertEqual([str(d) for d in dropped], ['C=A+3'])

  def test_two_letters_in_one_column(self):
    chains, dropped = scritchmus.build_chains(_deductions('A=B+1', 'C=B+1'))
    self.assertEqual([str(d) for d in dropped], ['C=B+1'])
    self.assertEqual([str(c) for c in chains], ['BA'])

  def test_wrapping_offsets(self):
    chain = _chain('A=B+13', 'B=A+13')
    self.assertEqual(chain.elements, (('A', 0), ('B', 13)))


class ChainTest(absltest.TestCase):

  def test_from_text(self):
    chain = scritchmus.Chain.from_text('--V----K---G')
    self.assertEqual(chain.elements, (('V', 0), ('K', 5), ('G', 9)))
    self.assertEqual(chain.span, 9)
    self.assertEqual(chain.arcs(), [(0, 9)])

  def test_full_chain_covers_the_circle(self):
    chain = scritchmus.Chain.from_text(LETTERS)
    self.assertEqual(chain.arcs(), [(0, 26)])

  def test_deduction_arcs(self):
    placed = scritchmus.PlacedChain(_chain('G=K+4', 'G=V+9'), 18)
    self.assertEqual(sorted(placed.arcs()), [(18, 9), (23, 4)])
    self.assertEqual(placed.column('G'), 1)

  def test_invalid(self):
    with self.assertRaisesRegex(ValueError, 'distinct'):
      scritchmus.Chain((('A', 0), ('A', 3)))
    with self.assertRaisesRegex(ValueError, 'increase'):
      scritchmus.Chain((('A', 0), ('B', 0)))
    with self.assertRaisesRegex(ValueError, 'position 0'):
      scritchmus.Chain((('A', 1),))


class AlphabetHypothesisTest(absltest.TestCase):

  def test_worked_alphabet_is_an_involution(self):
    hypothesis = scritchmus.AlphabetHypothesis.from_letters(ALPHABET)
    self.assertLen(hypothesis.pairs, 13)
    self.assertEqual(hypothesis.get('A'), 'R')
    self.assertEqual(hypothesis.to_letters(), ALPHABET)

  def test_invalid(self):
    with self.assertRaisesRegex(ValueError, 'itself'):
      scritchmus.AlphabetHypothesis((('A', 'A'),))
    with self.assertRaisesRegex(ValueError, 'not matched'):
      scritchmus.AlphabetHypothesis((('A', 'B'),))
    with self.assertRaisesRegex(ValueError, 'not matched'):
      scritchmus.AlphabetHypothesis.from_letters('BCA' + '.' * 23)


class PlacementsTest(absltest.TestCase):

  def test_worked_placements(self):
    chain = scritchmus.Chain.from_text('V----K---G')
    offsets = dict(scritchmus.placements(chain))
    self.assertNotIn(LETTERS.index('F'), offsets)
    self.assertNotIn(LETTERS.index('G'), offsets)
    self.assertEqual(
        offsets[LETTERS.index('B')].pairs, (('B', 'V'), ('G', 'K')))
    self.assertEqual(offsets[LETTERS.index('S')].pairs,
                     (('B', 'G'), ('K', 'X'), ('S', 'V')))
    chain = scritchmus.Chain.from_text('M-C-------Q')
    offsets = dict(scritchmus.placements(chain))
    self.assertNotIn(LETTERS.index('C'), offsets)
    self.assertEqual(offsets[LETTERS.index('D')].pairs,
                     (('C', 'F'), ('D', 'M'), ('N', 'Q')))

  def test_respects_the_hypothesis(self):
    chain = scritchmus.Chain.from_text('V----K---G')
    seed = scritchmus.AlphabetHypothesis.from_pairs([('B', 'G')])
    offsets = [o for o, _ in scritchmus.placements(chain, seed)]
    self.assertNotIn(LETTERS.index('B'), offsets)
    self.assertIn(LETTERS.index('S'), offsets)

  def test_agrees_with_all_offset_scan(self):
    rng = np.random.RandomState(0)
    for _ in range(200):
      size = rng.randint(1, 8)
      letters = rng.choice(list(LETTERS), size=size, replace=False)
      positions = np.sort(rng.choice(26, size=size, replace=False))
      positions -= positions[0]
      chain = scritchmus.Chain(tuple(zip(letters, positions.tolist())))
      shuffled = rng.permutation(list(LETTERS))
      seed = scritchmus.AlphabetHypothesis.from_pairs(
          [(shuffled[2 * i], shuffled[2 * i + 1])
           for i in range(rng.randint(0, 6))])
      offsets = [o for o, _ in scritchmus.placements(chain, seed)]
      self.assertEqual(
          offsets,
          oracles.all_offset_placements(chain.elements, seed.as_dict(),
                                        LETTERS))


class EnumerateAlphabetsTest(absltest.TestCase):

  def test_worked_example_is_enumerated(self):
    chains, _ = scritchmus.build_chains(
        _deductions('G=K+4', 'G=V+9', 'M=Q+16', 'C=Q+18'))
    candidates = scritchmus.enumerate_alphabets(chains)
    full = scritchmus.AlphabetHypothesis.from_letters(ALPHABET)
    consistent = [c for c in candidates if c.hypothesis.issubset(full)]
    self.assertLen(consistent, 1)
    self.assertEqual(
        consistent[0].hypothesis.pairs,
        (('B', 'G'), ('C', 'F'), ('D', 'M'), ('K', 'X'), ('N', 'Q'),
         ('S', 'V')))
    for candidate in candidates:
      self.assertLen(candidate.placed, 2)
      self.assertLessEqual(len(candidate.hypothesis.pairs), 13)

  def test_worked_example_completes_to_the_full_alphabet(self):
    chains, dropped = scritchmus.build_chains(_deductions(
        'G=K+4', 'G=V+9', 'M=Q+16', 'C=Q+18', 'J=R+4', 'T=R+7', 'U=R+8',
        'Z=R+11', 'W=R+14', 'P=R+24'))
    self.assertEmpty(dropped)
    self.assertLen(chains, 3)
    candidates = scritchmus.enumerate_alphabets(chains)
    letters = [c.hypothesis.to_letters() for c in candidates]
    self.assertIn(ALPHABET, letters)
    full = candidates[letters.index(ALPHABET)].hypothesis
    self.assertLen(full.pairs, 13)
    self.assertTrue(all(full.get(full.get(c)) == c != full.get(c)
                        for c in LETTERS))

  def test_no_chains(self):
    candidates = scritchmus.enumerate_alphabets([])
    self.assertLen(candidates, 1)
    self.assertEqual(candidates[0].hypothesis.mapping, ())

  def test_independent_of_chain_order(self):
    chains, _ = scritchmus.build_chains(
        _deductions('G=K+4', 'M=Q+16', 'A=B+3', 'C=Q+18'))
    forward = scritchmus.enumerate_alphabets(chains)
    backward = scritchmus.enumerate_alphabets(chains[::-1])
    self.assertEqual({c.hypothesis for c in forward},
                     {c.hypothesis for c in backward})

  def test_cap(self):
    chains, _ = scritchmus.build_chains(_deductions('A=B+3', 'C=D+5'))
    self.assertLen(scritchmus.enumerate_alphabets(chains, max_alphabets=3), 3)
    self.assertLen(scritchmus.enumerate_alphabets(chains, max_nodes=1), 0)


class CompatibleRotorsTest(absltest.TestCase):

  def setUp(self):
    super().setUp()
    figure = catalogue.builtin_catalogue('notch_figure')
    self.rotors = [figure.rotor(n) for n in figure.rotor_names]

  def test_worked_figure(self):
    placed = [
        scritchmus.PlacedChain(scritchmus.Chain.from_text('V----K---G'),
                               LETTERS.index('S')),
        scritchmus.PlacedChain(scritchmus.Chain.from_text('M-C-------Q'),
                               LETTERS.index('D')),
        scritchmus.PlacedChain(scritchmus.Chain.from_text('J----E'),
                               LETTERS.index('E')),
    ]
    self.assertEqual(scritchmus.compatible_rotors(placed, self.rotors), ['1'])

  def test_no_chains(self):
    self.assertEqual(scritchmus.compatible_rotors([], self.rotors),
                     ['1', '2', '3', '4', '5'])

  def test_full_chain(self):
    placed = [scritchmus.PlacedChain(scritchmus.Chain.from_text(LETTERS), 0)]
    self.assertEqual(scritchmus.compatible_rotors(placed, self.rotors), [])

  def test_turnover_on_the_arc_end_is_compatible(self):
    # Rotor 2 turns over between D and E.
    placed = [scritchmus.PlacedChain(scritchmus.Chain.from_text('A--D'), 0)]
    self.assertIn('2', scritchmus.compatible_rotors(placed, self.rotors))
    placed = [scritchmus.PlacedChain(scritchmus.Chain.from_text('A---E'), 0)]
    self.assertNotIn('2', scritchmus.compatible_rotors(placed, self.rotors))


class DeduceTest(absltest.TestCase):

  def test_true_rotor_survives_correct_deductions(self):
    cat = catalogue.builtin_catalogue()
    stream = seeding.stream(0, 'scritchmus_test')
    rng = np.random.RandomState(0)
    for i in range(20):
      daily = keysheet.random_daily_key(seeding.item(stream, i))
      state = machine.positions_after(daily.machine(cat), 2)
      cipher = state.cipher_alphabet_at().forward
      right = cat.rotor(daily.walzenlage[-1])
      keys = rng.permutation(26)[:12]
      deductions = []
      for j, (a, b) in enumerate(zip(keys, keys[1:])):
        d = int((b - a) % 26)
        x, y = LETTERS[cipher[a]], LETTERS[cipher[b]]
        if any((t - a) % 26 < d for t in right.turnovers):
          deductions.append(scritchmus.Deduction(x, y, 26 - d, 30. + j))
        else:
          deductions.append(scritchmus.Deduction(y, x, d, 30. + j))
      result = scritchmus.deduce(deductions, cat)
      self.assertFalse(result.fallback)
      self.assertEqual(result.dropped, ())
      self.assertLen(result.chains, 1)
      self.assertIn(right.name, result.shortlist)
      truth = {LETTERS[k]: LETTERS[cipher[k]] for k in range(26)}
      self.assertTrue(any(
          set(c.hypothesis.as_dict().items()) <= set(truth.items())
          for c in result.candidates))

  def test_retry_drops_the_weakest(self):
    figure = catalogue.builtin_catalogue('notch_figure')
    deductions = [
        scritchmus.Deduction('A', 'B', 13, 20.),
        scritchmus.Deduction('B', 'A', 13, 10.),
    ]
    result = scritchmus.deduce(deductions, figure)
    self.assertEqual(result.rounds, 1)
    self.assertEqual([str(d) for d in result.dropped], ['B=A+13'])
    self.assertNotEmpty(result.shortlist)
    self.assertFalse(result.fallback)

  def test_fallback_keeps_all_rotors(self):
    figure = catalogue.builtin_catalogue('notch_figure')
    deductions = [
        scritchmus.Deduction('A', 'B', 13, 20.),
        scritchmus.Deduction('B', 'A', 13, 10.),
    ]
    result = scritchmus.deduce(deductions, figure,
                               scritchmus.ScritchmusConfig(max_rounds=0))
    self.assertTrue(result.fallback)
    self.assertEqual(result.shortlist, ('1', '2', '3', '4', '5'))

  def test_no_deductions_keep_all_rotors(self):
    result = scritchmus.deduce([], rotor_names=('I', 'III'))
    self.assertEqual(result.shortlist, ('I', 'III'))
    self.assertEqual(result.rounds, 0)


if __name__ == '__main__':
  absltest.main()
