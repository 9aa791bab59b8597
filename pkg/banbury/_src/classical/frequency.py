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
"""Letter frequency tables and coincidence statistics."""

import dataclasses
import os
from typing import Iterable, Mapping, Optional

from banbury._src.utils import alphabet as alphabet_lib
from banbury._src.utils import errors
from banbury._src.utils import records
import numpy as np

Alphabet = alphabet_lib.Alphabet

_DATA_DIR = os.path.join(os.path.dirname(os.path.dirname(__file__)), 'data')
ITALIAN_TABLE_PATH = os.path.join(_DATA_DIR, 'italian_frequencies.tsv')


@dataclasses.dataclass(frozen=True)
class FrequencyTable:
  """Relative letter frequencies over an alphabet.

  Letters missing from `entries` have frequency zero.
  """

  entries: Mapping[str, float]
  alphabet: Alphabet = alphabet_lib.LATIN

  def __post_init__(self):
    for letter, value in self.entries.items():
      self.alphabet.index(letter)
      if value < 0:
        raise ValueError(
            f'Frequency of `{letter}` must be non-negative, got {value}.')
    total = sum(self.entries.values())
    if abs(total - 1.) > 1e-9:
      raise ValueError(f'Frequencies must sum to 1, got {total!r}.')

  def __getitem__(self, letter: str) -> float:
    self.alphabet.index(letter)
    return self.entries.get(letter, 0.)

  def as_array(self) -> np.ndarray:
    """Frequencies in alphabet order, zeros included."""
    return np.array([self.entries.get(c, 0.) for c in self.alphabet.letters])

  def sorted_values(self) -> np.ndarray:
    return np.sort(self.as_array())[::-1]

  def coincidence_rate(self) -> float:
    """Probability that two independent letters drawn from the table agree."""
    return float(np.sum(self.as_array()**2))


def _counts(text: str, alphabet: Alphabet) -> np.ndarray:
  letters = alphabet.encode(alphabet.normalize(text))
  if not letters.size:
    raise ValueError('Cannot compute frequencies of a text with no letters.')
  return np.bincount(letters, minlength=alphabet.size)


def letter_frequencies(
    text: str, alphabet: Alphabet = alphabet_lib.LATIN) -> FrequencyTable:
  """Returns the empirical frequencies of the letters occurring in `text`."""
  counts = _counts(text, alphabet)
  total = counts.sum()
  entries = {alphabet.letter(i): float(counts[i] / total)
             for i in np.flatnonzero(counts)}
  return FrequencyTable(entries, alphabet)


def index_of_coincidence(text: str,
                         alphabet: Alphabet = alphabet_lib.LATIN) -> float:
  """Probability that two distinct positions of `text` hold the same letter."""
  counts = _counts(text, alphabet).astype(np.float64)
  n = counts.sum()
  if n < 2:
    raise ValueError('The index of coincidence needs at least two letters.')
  return float(np.sum(counts * (counts - 1)) / (n * (n - 1)))


def load_frequency_table(path: str,
                         alphabet: Alphabet = alphabet_lib.LATIN,
                         tolerance: float = 1e-3) -> FrequencyTable:
  """Reads a `LETTER<TAB>fraction` table.

  Printed tables are rounded, so their entries rarely sum to exactly one. A
  table whose sum is within `tolerance` of one is renormalized; anything
  further off is rejected.

  Args:
    path: the table file.
    alphabet: the alphabet the letters belong to.
    tolerance: the accepted deviation of the raw sum from one.

  Returns:
    The normalized table.
  """
  return parse_frequency_table(
      records.read_lines(path), alphabet, tolerance, source=path)


def parse_frequency_table(lines: Iterable[str],
                          alphabet: Alphabet = alphabet_lib.LATIN,
                          tolerance: float = 1e-3,
                          source: Optional[str] = '<string>') -> FrequencyTable:
  """Parses the lines of a frequency table; see `load_frequency_table`."""
  raw = {}
  for record in records.iter_records(lines, source, num_fields=(2,)):
    letter, value = (f.strip() for f in record.fields)
    letter = letter.upper()
    if letter not in alphabet:
      raise errors.RecordError(
          f'letter `{letter}` is not in the alphabet', source,
          record.line_number)
    if letter in raw:
      raise errors.RecordError(
          f'duplicate letter `{letter}`', source, record.line_number)
    try:
      raw[letter] = float(value)
    except ValueError:
      raise errors.RecordError(
          f'`{value}` is not a number', source, record.line_number) from None
    if raw[letter] < 0:
      raise errors.RecordError(
          f'negative frequency for `{letter}`', source, record.line_number)
  total = sum(raw.values())
  if abs(total - 1.) > tolerance:
    raise errors.RecordError(
        f'frequencies sum to {total:.6f}, which is more than {tolerance} away '
        f'from 1', source)
  return FrequencyTable({k: v / total for k, v in raw.items()}, alphabet)


def store_frequency_table(table: FrequencyTable, path: str) -> None:
  records.write_lines(path, (f'{letter}\t{float(value)!r}'
                             for letter, value in table.entries.items()))


def italian_reference_table() -> FrequencyTable:
  """The Italian letter frequencies shipped with the package."""
  return load_frequency_table(ITALIAN_TABLE_PATH)
