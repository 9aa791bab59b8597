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
"""Banburismus: sliding two intercepts to find where they are in depth.

Two messages whose indicators agree in their first two letters were enciphered
with message keys that differ only in the right rotor. Shifted against each
other by the difference of the third key letters, the two ciphertexts run
through the same machine states, so aligned letters agree as often as
plaintext letters do (about 1 in 17) rather than 1 in 26.
"""

import dataclasses
import functools
from typing import List, Mapping, Optional, Sequence, Tuple, Union

from banbury._src.inference import bayes
from banbury._src.protocol import indicator
from banbury._src.utils import alphabet as alphabet_lib
import chex
import jax.numpy as jnp
import numpy as np

Alphabet = alphabet_lib.Alphabet
Array = chex.Array
Intercept = indicator.Intercept
Letters = Union[str, Array]

HOLE = 'O'
BLANK = '.'


def default_bonus(run: int) -> float:
  """Decibans added for a run of `run` consecutive matches."""
  return min(3. * (run - 1), 12.)


def default_malus(shift: int) -> float:
  """Decibans charged for the chance of a turnover inside the overlap."""
  return -10. * np.log10(1. - min(abs(shift), 25) / 26.)


@dataclasses.dataclass(frozen=True)
class ScoreConfig:
  """Parameters of the weight of evidence of a shift.

  Attributes:
    kappa_lang: rate of coincidence of plaintext letters.
    kappa_rand: rate of coincidence of unrelated letters.
    bonus: run length to deciban bonus; lengths missing from the table earn
      the bonus of the longest listed run not exceeding them. `None` uses
      `default_bonus`.
    malus: absolute shift to deciban penalty; `None` uses `default_malus`.
    use_bonus: whether runs earn a bonus at all; off by default.
    use_malus: whether shifts are penalized at all.
    min_overlap: shifts with a shorter overlap are not scored.
    max_shift: largest absolute shift considered.
  """

  kappa_lang: float = 1. / 17
  kappa_rand: float = 1. / 26
  bonus: Optional[Mapping[int, float]] = None
  malus: Optional[Mapping[int, float]] = None
  use_bonus: bool = False
  use_malus: bool = True
  min_overlap: int = 10
  max_shift: int = 25

  def __post_init__(self):
    if not 0. < self.kappa_rand < self.kappa_lang < 1.:
      raise ValueError(
          f'Need 0 < `kappa_rand` < `kappa_lang` < 1, got {self.kappa_rand} '
          f'and {self.kappa_lang}.')
    if self.min_overlap < 1:
      raise ValueError(
          f'`min_overlap` must be at least 1, got {self.min_overlap}.')
    if self.max_shift < 1:
      raise ValueError(
          f'`max_shift` must be at least 1, got {self.max_shift}.')

  def bonus_for(self, run: int) -> float:
    if not self.use_bonus or run < 2:
      return 0.
    if self.bonus is None:
      return default_bonus(run)
    listed = [r for r in self.bonus if r <= run]
    return float(self.bonus[max(listed)]) if listed else 0.

  def malus_for(self, shift: int) -> float:
    if not self.use_malus:
      return 0.
    if self.malus is None:
      return default_malus(shift)
    return float(self.malus.get(abs(shift), 0.))


@dataclasses.dataclass(frozen=True)
class OverlapCount:
  """Coincidences of two messages at one relative shift.

  Attributes:
    shift: how far the second message is slid right under the first.
    runs: lengths of the maximal blocks of consecutive matches, in order.
    overlap: the number of aligned letter pairs.
  """

  shift: int
  runs: Tuple[int, ...]
  overlap: int

  def __post_init__(self):
    object.__setattr__(self, 'runs', tuple(int(r) for r in self.runs))
    if any(r < 1 for r in self.runs) or self.matches > self.overlap:
      raise ValueError(
          f'Runs {self.runs} do not fit an overlap of {self.overlap}.')

  @property
  def matches(self) -> int:
    return sum(self.runs)


@dataclasses.dataclass(frozen=True)
class ShiftEvidence:
  """A counted shift and its weight of evidence in decibans."""

  count: OverlapCount
  weight: float

  @property
  def shift(self) -> int:
    return self.count.shift

  @property
  def runs(self) -> Tuple[int, ...]:
    return self.count.runs

  @property
  def matches(self) -> int:
    return self.count.matches

  @property
  def overlap(self) -> int:
    return self.count.overlap

  @property
  def factor(self) -> float:
    """The equivalent Bayes-Turing factor, `10**(weight / 10)`."""
    return 10.**(self.weight / 10.)


def _as_indices(letters: Letters) -> np.ndarray:
  if isinstance(letters, str):
    return np.frombuffer(letters.encode('utf-8'), dtype=np.uint8)
  return np.asarray(letters).reshape(-1)


def _aligned(m1: np.ndarray, m2: np.ndarray,
             shift: int) -> Tuple[np.ndarray, np.ndarray]:
  if shift > 0:
    n = min(m1.size - shift, m2.size)
    return m1[shift:shift + max(n, 0)], m2[:max(n, 0)]
  n = min(m2.size + shift, m1.size)
  return m1[:max(n, 0)], m2[-shift:-shift + max(n, 0)]


def _runs(equal: np.ndarray) -> Tuple[int, ...]:
  padded = np.concatenate([[0], equal.astype(np.int8), [0]])
  edges = np.diff(padded)
  return tuple((np.flatnonzero(edges == -1) -
                np.flatnonzero(edges == 1)).tolist())


def count_matches(m1: Letters, m2: Letters, shift: int) -> OverlapCount:
  """Counts aligned coincidences with `m2` slid `shift` letters right.

  For a positive shift, `m2[j]` sits under `m1[j + shift]`; for a negative
  shift, `m1[j]` sits over `m2[j - shift]`.

  Args:
    m1: the first ciphertext, as letters or indices.
    m2: the second ciphertext.
    shift: the relative shift, non-zero.

  Returns:
    The runs of matches and the overlap length.

  Raises:
    ValueError: if `shift` is zero or leaves no overlap.
  """
  if shift == 0:
    raise ValueError('`shift` must be non-zero.')
  m1, m2 = _as_indices(m1), _as_indices(m2)
  top, bottom = _aligned(m1, m2, shift)
  if not top.size:
    raise ValueError(
        f'Shift {shift} leaves no overlap between messages of lengths '
        f'{m1.size} and {m2.size}.')
  return OverlapCount(shift, _runs(top == bottom), top.size)


@functools.lru_cache(maxsize=None)
def _coefficients(kappa_lang: float, kappa_rand: float) -> Tuple[float, float]:
  likelihood_true = jnp.array([kappa_lang, 1. - kappa_lang])
  likelihood_false = jnp.array([kappa_rand, 1. - kappa_rand])
  weights = bayes.factor_to_decibans(
      bayes.bayes_factor(likelihood_true, likelihood_false))
  return float(weights[0]), float(weights[1])


def raw_weights(matches: Array, overlap: Array,
                config: ScoreConfig = ScoreConfig()) -> np.ndarray:
  """Decibans of `matches` coincidences in `overlap` pairs, before bonus.

  Each match is evidence `kappa_lang / kappa_rand` for depth and each
  non-match `(1 - kappa_lang) / (1 - kappa_rand)`.

  Args:
    matches: match counts.
    overlap: overlap lengths, broadcastable against `matches`.
    config: the scoring parameters.

  Returns:
    The weights as a float array.
  """
  per_match, per_miss = _coefficients(config.kappa_lang, config.kappa_rand)
  matches = jnp.asarray(matches)
  misses = jnp.asarray(overlap) - matches
  return np.asarray(matches * per_match + misses * per_miss, dtype=np.float64)


def _adjustment(count: OverlapCount, config: ScoreConfig) -> float:
  bonus = sum(config.bonus_for(r) for r in count.runs)
  return bonus - config.malus_for(count.shift)


def weight_of_evidence(count: OverlapCount,
                       config: ScoreConfig = ScoreConfig()) -> float:
  """Returns the decibans in favour of depth at `count.shift`."""
  raw = raw_weights(count.matches, count.overlap, config)
  return float(raw) + _adjustment(count, config)


def scored_shifts(m1: Letters, m2: Letters,
                  config: ScoreConfig = ScoreConfig()) -> List[int]:
  """The shifts in `[-max_shift, max_shift]` whose overlap is long enough."""
  n1, n2 = _as_indices(m1).size, _as_indices(m2).size
  shifts = []
  for shift in range(-config.max_shift, config.max_shift + 1):
    if shift == 0:
      continue
    overlap = min(n1 - shift, n2) if shift > 0 else min(n2 + shift, n1)
    if overlap >= config.min_overlap:
      shifts.append(shift)
  return shifts


def ranking_key(evidence: ShiftEvidence) -> Tuple[float, int, bool]:
  return (-evidence.weight, abs(evidence.shift), evidence.shift < 0)


def rank_shifts(m1: Letters, m2: Letters,
                config: ScoreConfig = ScoreConfig()) -> List[ShiftEvidence]:
  """Scores every admissible shift and sorts by decreasing weight.

  Ties go to the smaller absolute shift, then to the positive one.

  Args:
    m1: the first ciphertext.
    m2: the second ciphertext.
    config: the scoring parameters.

  Returns:
    The evidence for each shift, best first.
  """
  m1, m2 = _as_indices(m1), _as_indices(m2)
  counts = [count_matches(m1, m2, s) for s in scored_shifts(m1, m2, config)]
  if not counts:
    return []
  raw = raw_weights([c.matches for c in counts], [c.overlap for c in counts],
                    config)
  evidence = [
      ShiftEvidence(c, float(w) + _adjustment(c, config))
      for c, w in zip(counts, raw)
  ]
  return sorted(evidence, key=ranking_key)


def comparable(first: Intercept, second: Intercept) -> bool:
  """Whether two indicators agree in letters 1-2 and differ in letter 3."""
  a, b = first.indicator, second.indicator
  return a[:2] == b[:2] and a[2] != b[2]


def pair_candidates(
    corpus: Sequence[Intercept]) -> List[Tuple[Intercept, Intercept]]:
  """All pairs of intercepts that can be compared, in corpus order."""
  by_prefix = {}
  for position, intercept in enumerate(corpus):
    by_prefix.setdefault(intercept.indicator[:2], []).append(position)
  pairs = []
  for positions in by_prefix.values():
    for i, first in enumerate(positions):
      for second in positions[i + 1:]:
        if comparable(corpus[first], corpus[second]):
          pairs.append((first, second))
  return [(corpus[i], corpus[j]) for i, j in sorted(pairs)]


def render_banbury_sheet(intercept: Union[Intercept, str],
                         alphabet: Alphabet = alphabet_lib.LATIN) -> str:
  """Draws the punched sheet of a message.

  One row per letter of the alphabet and one column per message position,
  with a hole where the message has that letter.

  Args:
    intercept: the intercept, or its body.
    alphabet: the row labels.

  Returns:
    The sheet as text, one line per row.
  """
  body = intercept if isinstance(intercept, str) else intercept.body
  indices = alphabet.encode(body)
  rows = []
  for index, letter in enumerate(alphabet.letters):
    cells = ''.join(HOLE if i == index else BLANK for i in indices)
    rows.append(f'{letter} {cells}')
  return '\n'.join(rows)
