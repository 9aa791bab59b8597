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
"""Counting the daily keys of a machine model."""

import dataclasses
import itertools
import math
from typing import List, Sequence, Tuple


@dataclasses.dataclass(frozen=True)
class MachineModel:
  """The parameters that determine the size of the key space.

  Attributes:
    available_rotors: rotors supplied with the machine.
    chosen_rotors: rotors inserted at a time.
    plug_pairs: cables used on the plugboard.
    alphabet_size: letters on the keyboard.
  """

  available_rotors: int = 5
  chosen_rotors: int = 3
  plug_pairs: int = 10
  alphabet_size: int = 26

  def __post_init__(self):
    if self.alphabet_size < 2:
      raise ValueError(
          f'`alphabet_size` must be at least 2, got {self.alphabet_size}.')
    if not 1 <= self.chosen_rotors <= self.available_rotors:
      raise ValueError(
          f'Cannot choose {self.chosen_rotors} of {self.available_rotors} '
          f'rotors.')
    if not 0 <= 2 * self.plug_pairs <= self.alphabet_size:
      raise ValueError(
          f'Cannot place {self.plug_pairs} plug pairs on '
          f'{self.alphabet_size} letters.')


def rotor_orders(names: Sequence[str], k: int = 3) -> List[Tuple[str, ...]]:
  """Returns the ordered choices of `k` distinct rotors, left to right."""
  if not 1 <= k <= len(names):
    raise ValueError(f'Cannot choose {k} of {len(names)} rotors.')
  return list(itertools.permutations(names, k))


def plugboard_pairings(n: int, k: int) -> int:
  """Number of ways to wire `k` disjoint pairs among `n` letters.

  Equals `n! / ((n - 2k)! k! 2**k)`.

  Args:
    n: the number of letters.
    k: the number of pairs.

  Returns:
    The exact count.
  """
  if n < 0 or not 0 <= 2 * k <= n:
    raise ValueError(f'Cannot place {k} pairs on {n} letters.')
  return math.factorial(n) // (
      math.factorial(n - 2 * k) * math.factorial(k) * 2**k)


def keyspace_size(model: MachineModel = MachineModel()) -> int:
  """Counts the daily keys: rotor order, positions, rings and plugboard."""
  n = model.alphabet_size
  orders = math.perm(model.available_rotors, model.chosen_rotors)
  positions = n**model.chosen_rotors
  rings = n**model.chosen_rotors
  return orders * positions * rings * plugboard_pairings(n, model.plug_pairs)
