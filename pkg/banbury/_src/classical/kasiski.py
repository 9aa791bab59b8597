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
"""Kasiski examination of periodic polyalphabetic ciphertext.

A plaintext fragment that repeats at a distance which is a multiple of the key
length is enciphered identically both times. The divisors of the distances
between repeated n-grams therefore vote for the key length.
"""

import collections
import itertools
from typing import Dict, List, NamedTuple, Optional, Tuple


class Repeat(NamedTuple):
  """A maximal repeated fragment: `text[start:start+length]` recurs later."""
  start: int
  distance: int
  length: int


def repeated_ngrams(text: str, min_ngram: int = 3) -> List[Repeat]:
  """Finds the maximal repeats of length at least `min_ngram`.

  Every pair of occurrences of an n-gram is a repeat. A repeat that merely
  extends one position further to the left of another repeat with the same
  distance belongs to that longer repeat and is not reported again.

  Args:
    text: the ciphertext.
    min_ngram: the shortest repeat to report.

  Returns:
    The repeats sorted by start and distance.
  """
  occurrences: Dict[str, List[int]] = collections.defaultdict(list)
  for i in range(len(text) - min_ngram + 1):
    occurrences[text[i:i + min_ngram]].append(i)

  starts = set()
  for positions in occurrences.values():
    for p, q in itertools.combinations(positions, 2):
      starts.add((p, q - p))

  repeats = []
  for start, distance in sorted(starts):
    if start > 0 and text[start - 1] == text[start - 1 + distance]:
      continue
    length = min_ngram
    while (start + distance + length < len(text) and
           text[start + length] == text[start + distance + length]):
      length += 1
    repeats.append(Repeat(start, distance, length))
  return repeats


def _divisors(n: int, max_length: Optional[int]) -> List[int]:
  limit = n if max_length is None else min(n, max_length)
  return [d for d in range(2, limit + 1) if n % d == 0]


def kasiski_candidates(ciphertext: str,
                       min_ngram: int = 3,
                       max_length: Optional[int] = None
                      ) -> List[Tuple[int, int]]:
  """Ranks candidate key lengths by the repeats whose distance they divide.

  Each repeat votes once for each divisor greater than one of its distance.

  Args:
    ciphertext: the normalized ciphertext.
    min_ngram: the shortest repeated fragment to count, at least 3.
    max_length: if given, the largest key length to consider.

  Returns:
    `(length, votes)` pairs sorted by decreasing votes, then increasing length.
    No repeated fragment gives an empty list.
  """
  if min_ngram < 3:
    raise ValueError(f'`min_ngram` must be at least 3, got {min_ngram}.')
  if len(ciphertext) < 2 * min_ngram:
    raise ValueError(
        f'The ciphertext needs at least {2 * min_ngram} letters for '
        f'`min_ngram={min_ngram}`, got {len(ciphertext)}.')
  votes = collections.Counter()
  for repeat in repeated_ngrams(ciphertext, min_ngram):
    votes.update(_divisors(repeat.distance, max_length))
  return sorted(votes.items(), key=lambda item: (-item[1], item[0]))
