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
"""Synthetic daily traffic.

Plaintexts are drawn either letter by letter from a frequency table, mixed
with the uniform distribution so that two aligned letters agree with
probability `coincidence_target`, or as random windows of a prepared text
corpus. Message keys are uniform, except that a fraction of them share a
two-letter prefix drawn once per day. Messages with the same prefix have
indicators with the same first two letters and are candidates for
Banburismus.
"""

import dataclasses
from typing import List, Optional, Sequence

from absl import logging
from banbury._src.classical import frequency
from banbury._src.enigma import catalogue as catalogue_lib
from banbury._src.protocol import indicator
from banbury._src.protocol import keysheet
from banbury._src.utils import alphabet as alphabet_lib
from banbury._src.utils import math
from banbury._src.utils import records
from banbury._src.utils import seeding
import chex
import numpy as np

Alphabet = alphabet_lib.Alphabet
Catalogue = catalogue_lib.Catalogue
DailyKey = keysheet.DailyKey
Intercept = indicator.Intercept
PRNGKey = chex.PRNGKey

GERMAN_NUMERALS = {
    '0': 'NULL', '1': 'EINS', '2': 'ZWEI', '3': 'DREI', '4': 'VIER',
    '5': 'FUENF', '6': 'SECHS', '7': 'SIEBEN', '8': 'ACHT', '9': 'NEUN',
}
WORD_SEPARATOR = 'X'


def prepare_plaintext(text: str,
                      alphabet: Alphabet = alphabet_lib.LATIN) -> str:
  """Reduces free text to what an operator would type.

  Digits are spelled out in German, spaces become `X` and everything else
  outside the alphabet is dropped.

  Args:
    text: free text.
    alphabet: the machine's alphabet.

  Returns:
    The letters to encipher.
  """
  words = []
  for token in text.upper().split():
    spelled = ''.join(GERMAN_NUMERALS.get(c, c) for c in token)
    letters = alphabet.normalize(spelled)
    if letters:
      words.append(letters)
  separator = WORD_SEPARATOR if WORD_SEPARATOR in alphabet else ''
  return separator.join(words)


@dataclasses.dataclass(frozen=True)
class LengthDistribution:
  """Message lengths drawn uniformly from `[low, high]`."""

  low: int = 130
  high: int = 230

  def __post_init__(self):
    if not 1 <= self.low <= self.high:
      raise ValueError(
          f'Need 1 <= `low` <= `high`, got low={self.low}, high={self.high}.')

  def sample(self, key: PRNGKey, n: int) -> np.ndarray:
    return seeding.randint(key, self.low, self.high + 1, (n,))


@dataclasses.dataclass(frozen=True)
class TrafficModel:
  """How plaintexts and message keys are generated.

  Attributes:
    coincidence_target: probability that two aligned plaintext letters agree.
    table_path: a frequency table; default the Italian reference table.
    corpus_path: if set, plaintexts are windows of this text instead.
    cluster_fraction: fraction of message keys sharing the day's prefix.
    lengths: the message length distribution.
  """

  coincidence_target: float = 1. / 17
  table_path: Optional[str] = None
  corpus_path: Optional[str] = None
  cluster_fraction: float = 0.3
  lengths: LengthDistribution = LengthDistribution()

  def __post_init__(self):
    if not 0. < self.coincidence_target <= 1.:
      raise ValueError(
          f'`coincidence_target` must be in (0, 1], got '
          f'{self.coincidence_target}.')
    if not 0. <= self.cluster_fraction <= 1.:
      raise ValueError(
          f'`cluster_fraction` must be in [0, 1], got '
          f'{self.cluster_fraction}.')


def letter_probabilities(model: TrafficModel,
                         alphabet: Alphabet = alphabet_lib.LATIN
                        ) -> np.ndarray:
  """The order-0 letter model with coincidence rate `coincidence_target`."""
  if model.coincidence_target <= 1. / alphabet.size:
    raise ValueError(
        f'`coincidence_target` must exceed 1/{alphabet.size}, got '
        f'{model.coincidence_target}.')
  if model.table_path is None:
    if alphabet != alphabet_lib.LATIN:
      raise ValueError(
          'The Italian reference table only covers the Latin alphabet; pass '
          '`table_path` for other alphabets.')
    table = frequency.italian_reference_table()
  else:
    table = frequency.load_frequency_table(model.table_path, alphabet)
  return math.mix_to_coincidence(table.as_array(), model.coincidence_target)


class PlaintextSource:
  """Draws plaintexts according to a `TrafficModel`."""

  def __init__(self, model: TrafficModel,
               alphabet: Alphabet = alphabet_lib.LATIN):
    self._alphabet = alphabet
    self._corpus = None
    self._probs = None
    if model.corpus_path is not None:
      text = prepare_plaintext(
          ' '.join(records.read_lines(model.corpus_path)), alphabet)
      if not text:
        raise ValueError(
            f'Corpus `{model.corpus_path}` contains no usable letters.')
      self._corpus = alphabet.encode(text)
    else:
      self._probs = letter_probabilities(model, alphabet)

  def sample(self, key: PRNGKey, length: int) -> str:
    if self._corpus is None:
      letters = seeding.categorical(key, self._probs, (length,))
    else:
      start = int(seeding.randint(key, 0, self._corpus.size))
      letters = np.take(self._corpus, start + np.arange(length), mode='wrap')
    return self._alphabet.decode(letters)


@dataclasses.dataclass(frozen=True)
class CribPlan:
  """A known plaintext fragment to plant in one message of the day."""

  text: str
  message_index: int = 0
  anchor: int = 0

  def __post_init__(self):
    if not self.text:
      raise ValueError('`text` must not be empty.')
    if self.message_index < 0 or self.anchor < 0:
      raise ValueError(
          f'`message_index` and `anchor` must be non-negative, got '
          f'{self.message_index} and {self.anchor}.')


@dataclasses.dataclass(frozen=True)
class DayTraffic:
  """A day of intercepts together with the truth behind them."""

  daily: DailyKey
  intercepts: List[Intercept]
  message_keys: List[str]
  plaintexts: List[str]
  crib: Optional[CribPlan] = None


def _message_keys(key: PRNGKey, n: int, cluster_fraction: float,
                  alphabet: Alphabet) -> List[str]:
  prefix_key, clustered_key, letters_key = seeding.split(key, 3)
  prefix = seeding.randint(prefix_key, 0, alphabet.size, (2,))
  clustered = seeding.uniform(clustered_key, (n,)) < cluster_fraction
  letters = seeding.randint(letters_key, 0, alphabet.size, (n, 3))
  letters[clustered, :2] = prefix
  return [alphabet.decode(row) for row in letters]


def sample_day(key: PRNGKey,
               daily: DailyKey,
               model: TrafficModel = TrafficModel(),
               n: int = 200,
               catalogue: Optional[Catalogue] = None,
               crib: Optional[CribPlan] = None,
               doubled: bool = False) -> DayTraffic:
  """Generates a day of traffic and keeps the ground truth.

  Args:
    key: the PRNG key of the traffic stream.
    daily: the day's settings.
    model: the plaintext and message-key model.
    n: the number of messages.
    catalogue: the components named by `daily`; default Wehrmacht.
    crib: a fragment to plant; its message is lengthened if needed.
    doubled: whether indicators are doubled.

  Returns:
    The intercepts, message keys and plaintexts. Message `i` has id `i` in
    four digits and depends only on `key` and `i`.
  """
  if n < 1:
    raise ValueError(f'`n` must be at least 1, got {n}.')
  catalogue = catalogue or catalogue_lib.builtin_catalogue()
  alphabet = catalogue.alphabet
  if crib is not None and crib.message_index >= n:
    raise ValueError(
        f'Cannot plant a crib in message {crib.message_index} of {n}.')
  daily.validate(catalogue)
  keys_key, lengths_key, texts_key = seeding.split(key, 3)
  message_keys = _message_keys(keys_key, n, model.cluster_fraction, alphabet)
  lengths = model.lengths.sample(lengths_key, n)
  source = PlaintextSource(model, alphabet)

  intercepts = []
  plaintexts = []
  for i, (message_key, length) in enumerate(zip(message_keys, lengths)):
    length = int(length)
    planted = crib is not None and crib.message_index == i
    if planted:
      length = max(length, crib.anchor + len(crib.text))
    plaintext = source.sample(seeding.item(texts_key, i), length)
    if planted:
      end = crib.anchor + len(crib.text)
      plaintext = plaintext[:crib.anchor] + crib.text + plaintext[end:]
    plaintexts.append(plaintext)
    intercepts.append(indicator.transmit(
        daily, message_key, plaintext, catalogue, doubled=doubled,
        message_id=f'{i:04d}'))
    logging.vlog(1, 'Message %d: key %s, %d letters.', i, message_key, length)
  logging.info('Generated %d intercepts.', n)
  return DayTraffic(daily, intercepts, message_keys, plaintexts, crib)


def generate_day_traffic(daily: DailyKey,
                         model: TrafficModel = TrafficModel(),
                         n: int = 200,
                         seed: int = 0,
                         catalogue: Optional[Catalogue] = None,
                         crib: Optional[CribPlan] = None,
                         doubled: bool = False) -> List[Intercept]:
  """Generates a day of intercepts from the `'traffic'` stream of `seed`."""
  day = sample_day(seeding.stream(seed, 'traffic'), daily, model, n,
                   catalogue, crib, doubled)
  return day.intercepts


def match_rate(first: Sequence[str], second: Sequence[str]) -> float:
  """Fraction of aligned positions holding equal letters, over all pairs."""
  matches = total = 0
  for a, b in zip(first, second):
    overlap = min(len(a), len(b))
    a = np.frombuffer(a[:overlap].encode('ascii'), dtype=np.uint8)
    b = np.frombuffer(b[:overlap].encode('ascii'), dtype=np.uint8)
    matches += int(np.sum(a == b))
    total += overlap
  if not total:
    raise ValueError('No aligned positions to compare.')
  return matches / total
