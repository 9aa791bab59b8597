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
"""The Enigma machine.

The machine is an immutable `MachineState`; every operation returns a new
state. Rotors are listed left to right, so `rotors[-1]` is the fast rotor next
to the keyboard. A keypress first steps the rotors and then enciphers the
letter along the path

  plugboard -> right -> middle -> left -> reflector
            -> left^-1 -> middle^-1 -> right^-1 -> plugboard.

Stepping is a pure odometer: a rotor moving from a turnover letter `T` to
`T + 1` advances its left neighbour during the same keypress. The historical
double-stepping anomaly is not modelled, so three single-notch rotors give a
period of exactly `N**3` keypresses.

A rotor with ring setting `r` at window position `p` realizes its wiring
rotated by `p - r`: contact `x` is wired to `W[(x + p - r) % N] - (p - r)`.
Advancing ring and position together therefore leaves the wiring unchanged.

Message-length operations do not loop over keypresses: the positions of all
keypresses follow in closed form from `odometer_positions`, and the scrambler
of every keypress is evaluated at once by `scrambler_maps`.
"""

import dataclasses
from typing import Optional, Sequence, Tuple, Union

from banbury._src.enigma import catalogue as catalogue_lib
from banbury._src.enigma import components
from banbury._src.utils import alphabet as alphabet_lib
from banbury._src.utils import permutation as permutation_lib
import chex
import numpy as np

Array = chex.Array
Alphabet = alphabet_lib.Alphabet
Catalogue = catalogue_lib.Catalogue
Permutation = permutation_lib.Permutation
Plugboard = components.Plugboard
ReflectorSpec = components.ReflectorSpec
RotorSpec = components.RotorSpec

NUM_ROTORS = 3
SettingLike = Union[str, Sequence[int]]


@dataclasses.dataclass(frozen=True)
class RotorSetting:
  """A rotor in a slot of the machine with its ring and window position."""

  spec: RotorSpec
  ring: int = 0
  position: int = 0

  def __post_init__(self):
    for field, value in (('ring', self.ring), ('position', self.position)):
      if not 0 <= value < self.spec.size:
        raise ValueError(
            f'`{field}` of rotor `{self.spec.name}` must be in '
            f'[0, {self.spec.size}), got {value}.')

  @property
  def offset(self) -> int:
    return (self.position - self.ring) % self.spec.size


def odometer_positions(positions: Array,
                       turnovers: Sequence[Sequence[int]],
                       steps: Array,
                       size: int) -> np.ndarray:
  """Returns rotor positions after the given numbers of keypresses.

  Args:
    positions: starting positions of shape `[..., k]`, left to right.
    turnovers: for each of the `k` rotors, its turnover indices.
    steps: non-negative keypress counts of shape `[L]`.
    size: the alphabet size.

  Returns:
    An int array of shape `[..., L, k]` with the positions after each entry of
    `steps` keypresses.
  """
  positions = np.asarray(positions, dtype=np.int64)
  steps = np.asarray(steps, dtype=np.int64)
  chex.assert_rank(steps, 1)
  k = positions.shape[-1]
  if len(turnovers) != k:
    raise ValueError(
        f'Got {len(turnovers)} turnover sets for {k} rotors.')
  if np.any(steps < 0):
    raise ValueError('`steps` must be non-negative.')
  out = np.empty(positions.shape[:-1] + (steps.size, k), dtype=np.int64)
  # Number of times the rotor in the current slot moves.
  moves = np.broadcast_to(steps, positions.shape[:-1] + steps.shape)
  for slot in reversed(range(k)):
    start = positions[..., slot, None]
    out[..., slot] = (start + moves) % size
    if slot == 0:
      break
    carries = np.zeros_like(moves)
    for t in turnovers[slot]:
      # The rotor crosses `t` on its `u+1`-th move, then every `size` moves.
      u = (t - start) % size
      carries += np.where(moves > u, 1 + (moves - 1 - u) // size, 0)
    moves = carries
  return out


def scrambler_maps(rotors: Sequence[RotorSpec],
                   reflector: ReflectorSpec,
                   rings: Array,
                   positions: Array) -> np.ndarray:
  """Evaluates the scrambler (rotor stack and reflector, no plugboard).

  Args:
    rotors: the rotors, left to right.
    reflector: the reflector.
    rings: ring settings of shape `[k]`.
    positions: window positions of shape `[..., k]`.

  Returns:
    An int array of shape `[..., N]` whose last axis is the scrambler
    permutation at each entry of `positions`. Each row is a fixed-point-free
    involution.
  """
  positions = np.asarray(positions, dtype=np.int64)
  rings = np.asarray(rings, dtype=np.int64)
  chex.assert_shape(rings, (len(rotors),))
  chex.assert_axis_dimension(positions, -1, len(rotors))
  n = reflector.wiring.size
  offsets = (positions - rings) % n
  x = np.broadcast_to(np.arange(n), positions.shape[:-1] + (n,))
  for slot in reversed(range(len(rotors))):
    off = offsets[..., slot, None]
    x = (rotors[slot].wiring.forward[(x + off) % n] - off) % n
  x = reflector.wiring.forward[x]
  for slot in range(len(rotors)):
    off = offsets[..., slot, None]
    x = (rotors[slot].wiring.inverse.forward[(x + off) % n] - off) % n
  return x


@dataclasses.dataclass(frozen=True)
class MachineState:
  """A fully set up machine, ready for the next keypress.

  Attributes:
    rotors: the rotor settings, left to right.
    reflector: the reflector.
    plugboard: the plugboard.
    alphabet: the alphabet of the keyboard and lampboard.
    step_after: if True, the rotors step after each letter is enciphered
      rather than before. The cipher stream then equals the default stream
      started one position earlier on the right rotor.
    double_step: reserved for the historical double-stepping anomaly; not
      implemented.
  """

  rotors: Tuple[RotorSetting, ...]
  reflector: ReflectorSpec
  plugboard: Plugboard
  alphabet: Alphabet = alphabet_lib.LATIN
  step_after: bool = False
  double_step: bool = False

  def __post_init__(self):
    object.__setattr__(self, 'rotors', tuple(self.rotors))
    if self.double_step:
      raise NotImplementedError('Double stepping is not implemented.')
    if len(self.rotors) != NUM_ROTORS:
      raise ValueError(
          f'The machine takes {NUM_ROTORS} rotors, got {len(self.rotors)}.')
    n = self.alphabet.size
    sizes = [r.spec.size for r in self.rotors]
    sizes += [self.reflector.wiring.size, self.plugboard.size]
    if any(size != n for size in sizes):
      raise ValueError(
          f'All components must act on the {n} letters of the alphabet, got '
          f'sizes {sizes}.')

  @classmethod
  def from_names(cls,
                 catalogue: Catalogue,
                 rotors: Sequence[str],
                 rings: Optional[SettingLike] = None,
                 positions: Optional[SettingLike] = None,
                 plugs: Sequence[str] = (),
                 reflector: Optional[str] = None,
                 step_after: bool = False) -> 'MachineState':
    """Sets up a machine from catalogue names and letter settings.

    Args:
      catalogue: the available components.
      rotors: rotor names, left to right, e.g. `('II', 'V', 'III')`.
      rings: ring settings as letters (`'AAA'`) or indices; default all zero.
      positions: window positions as letters or indices; default all zero.
      plugs: plug pairs as two-letter strings.
      reflector: the reflector name; default the first in the catalogue.
      step_after: see the class docstring.

    Returns:
      The machine state.
    """
    alphabet = catalogue.alphabet
    rings = _setting(rings, len(rotors), alphabet)
    positions = _setting(positions, len(rotors), alphabet)
    settings = tuple(
        RotorSetting(catalogue.rotor(name), int(r), int(p))
        for name, r, p in zip(rotors, rings, positions))
    return cls(
        rotors=settings,
        reflector=catalogue.reflector(reflector or catalogue.default_reflector),
        plugboard=Plugboard.from_letters(plugs, alphabet),
        alphabet=alphabet,
        step_after=step_after)

  @property
  def size(self) -> int:
    return self.alphabet.size

  @property
  def positions(self) -> np.ndarray:
    return np.array([r.position for r in self.rotors], dtype=np.int64)

  @property
  def rings(self) -> np.ndarray:
    return np.array([r.ring for r in self.rotors], dtype=np.int64)

  @property
  def window(self) -> str:
    """The letters showing in the rotor windows."""
    return self.alphabet.decode(self.positions)

  def with_positions(self, positions: SettingLike) -> 'MachineState':
    """Returns the same machine with the rotors turned to `positions`."""
    positions = _setting(positions, len(self.rotors), self.alphabet)
    return dataclasses.replace(self, rotors=tuple(
        dataclasses.replace(r, position=int(p))
        for r, p in zip(self.rotors, positions)))

  def _positions_after(self, steps: Array) -> np.ndarray:
    return odometer_positions(
        self.positions, [r.spec.turnovers for r in self.rotors], steps,
        self.size)

  def _keypress_positions(self, length: int) -> np.ndarray:
    first = 0 if self.step_after else 1
    return self._positions_after(np.arange(first, first + length))

  def _scrambler(self, positions: Array) -> np.ndarray:
    return scrambler_maps([r.spec for r in self.rotors], self.reflector,
                          self.rings, positions)

  def _cipher_maps(self, positions: Array) -> np.ndarray:
    plug = self.plugboard.permutation.forward
    return plug[self._scrambler(positions)[..., plug]]

  def encipher_indices(self, letters: Array) -> Tuple[np.ndarray,
                                                      'MachineState']:
    """Enciphers a sequence of letter indices; see `encipher_message`."""
    letters = self.alphabet.encode(letters)
    if not letters.size:
      return letters, self
    maps = self._cipher_maps(self._keypress_positions(letters.size))
    output = maps[np.arange(letters.size), letters]
    return output, positions_after(self, letters.size)

  def cipher_alphabet_at(self) -> Permutation:
    """The letter map the next keypress will apply, plugboard included."""
    return Permutation(self._cipher_maps(self._keypress_positions(1))[0])

  def scrambler_at(self) -> Permutation:
    """The scrambler of the next keypress, without the plugboard."""
    return Permutation(self._scrambler(self._keypress_positions(1))[0])


def _setting(value: Optional[SettingLike], length: int,
             alphabet: Alphabet) -> np.ndarray:
  if value is None:
    return np.zeros(length, dtype=np.int64)
  indices = alphabet.encode(value)
  if indices.size != length:
    raise ValueError(
        f'Expected {length} settings, got `{value}`.')
  return indices


def positions_after(state: MachineState, steps: int) -> MachineState:
  """Returns `state` after `steps` keypresses, in closed form."""
  if steps < 0:
    raise ValueError(f'`steps` must be non-negative, got {steps}.')
  turnovers = [r.spec.turnovers for r in state.rotors]
  positions = odometer_positions(
      state.positions, turnovers, np.array([steps]), state.size)
  return state.with_positions(positions[0])


def step(state: MachineState) -> MachineState:
  """Advances the rotors by one keypress."""
  return positions_after(state, 1)


def encipher_letter(state: MachineState,
                    letter: str) -> Tuple[str, MachineState]:
  """Presses one key; returns the lit lamp and the stepped state."""
  if len(letter) != 1:
    raise ValueError(f'`letter` must be a single letter, got `{letter}`.')
  output, state = state.encipher_indices(letter)
  return state.alphabet.letter(output[0]), state


def encipher_message(state: MachineState,
                     message: str) -> Tuple[str, MachineState]:
  """Enciphers `message` letter by letter from `state`.

  Enciphering and deciphering are the same operation: running the ciphertext
  through a machine in the same starting state recovers the plaintext.

  Args:
    state: the machine before the first keypress.
    message: letters of the machine's alphabet.

  Returns:
    The ciphertext and the state after the last keypress. An empty message
    leaves the state unchanged.
  """
  output, state = state.encipher_indices(message)
  return state.alphabet.decode(output), state


decipher_message = encipher_message
