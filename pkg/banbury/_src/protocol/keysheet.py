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
"""Daily key sheets.

A key sheet is a small text file:

  rotors: II V III
  rings: D Q X
  grund: QXT
  plugs: AB CD EF
  reflector: B

`reflector` is optional and defaults to `B`.
"""

import contextlib
import dataclasses
from typing import Iterable, List, Optional, Sequence, Tuple

from banbury._src.enigma import catalogue as catalogue_lib
from banbury._src.enigma import components
from banbury._src.enigma import machine
from banbury._src.utils import errors
from banbury._src.utils import records
from banbury._src.utils import seeding
import chex

Catalogue = catalogue_lib.Catalogue
MachineState = machine.MachineState
PRNGKey = chex.PRNGKey

_FIELDS = ('rotors', 'rings', 'grund', 'plugs', 'reflector')
_REQUIRED = ('rotors', 'rings', 'grund')


def _check_setting(name: str, value: str, num_rotors: int) -> None:
  if len(value) != num_rotors:
    raise errors.BanburyError(
        f'`{name}` needs one letter per rotor, got `{value}`.')


@dataclasses.dataclass(frozen=True)
class DailyKey:
  """The settings of one day.

  Attributes:
    walzenlage: rotor names, left to right.
    ringstellung: one ring letter per rotor.
    grundstellung: the ground setting at which indicators are enciphered.
    steckerverbindungen: plug pairs as two-letter strings.
    reflector: the reflector name.
  """

  walzenlage: Tuple[str, ...]
  ringstellung: str
  grundstellung: str
  steckerverbindungen: Tuple[str, ...] = ()
  reflector: str = 'B'

  def __post_init__(self):
    object.__setattr__(self, 'walzenlage', tuple(self.walzenlage))
    object.__setattr__(self, 'steckerverbindungen',
                       tuple(self.steckerverbindungen))
    if len(set(self.walzenlage)) != len(self.walzenlage):
      raise errors.BanburyError(
          f'Rotor names must be distinct, got {" ".join(self.walzenlage)}.')
    _check_setting('ringstellung', self.ringstellung, len(self.walzenlage))
    _check_setting('grundstellung', self.grundstellung, len(self.walzenlage))

  def validate(self, catalogue: Catalogue) -> None:
    """Raises if any name or letter is unknown to `catalogue`."""
    self.machine(catalogue)

  def machine(self,
              catalogue: Catalogue,
              positions: Optional[str] = None,
              step_after: bool = False) -> MachineState:
    """Sets up the machine, by default at the ground setting."""
    try:
      return MachineState.from_names(
          catalogue,
          self.walzenlage,
          rings=self.ringstellung,
          positions=self.grundstellung if positions is None else positions,
          plugs=self.steckerverbindungen,
          reflector=self.reflector,
          step_after=step_after)
    except errors.BanburyError:
      raise
    except ValueError as e:
      raise errors.BanburyError(str(e)) from None


def parse_keysheet(lines: Iterable[str],
                   catalogue: Optional[Catalogue] = None,
                   source: str = '<string>') -> DailyKey:
  """Parses a key sheet and validates it against `catalogue`."""
  catalogue = catalogue or catalogue_lib.builtin_catalogue()
  values = {}
  for record in records.iter_records(lines, source, num_fields=(1,)):
    key, value = records.key_value(record, source)
    if key not in _FIELDS:
      raise errors.RecordError(
          f'unknown field `{key}`; expected one of {", ".join(_FIELDS)}',
          source, record.line_number)
    if key in values:
      raise errors.RecordError(
          f'duplicate field `{key}`', source, record.line_number)
    values[key] = (value, record.line_number)
  missing = [k for k in _REQUIRED if k not in values]
  if missing:
    raise errors.RecordError(
        f'missing field(s) {", ".join(missing)}', source)

  @contextlib.contextmanager
  def reported_at(field):
    try:
      yield
    except ValueError as e:
      line_number = values[field][1] if field in values else None
      raise errors.RecordError(str(e), source, line_number) from None

  num_rotors = len(values['rotors'][0].split())
  alphabet = catalogue.alphabet
  with reported_at('rotors'):
    for name in values['rotors'][0].split():
      catalogue.rotor(name)
  with reported_at('reflector'):
    reflector = values.get('reflector', ('B',))[0]
    catalogue.reflector(reflector)
  with reported_at('rings'):
    rings = ''.join(values['rings'][0].split())
    alphabet.encode(rings)
    _check_setting('ringstellung', rings, num_rotors)
  with reported_at('grund'):
    grund = ''.join(values['grund'][0].split())
    alphabet.encode(grund)
    _check_setting('grundstellung', grund, num_rotors)
  with reported_at('plugs'):
    plugs = tuple(values.get('plugs', ('',))[0].split())
    components.Plugboard.from_letters(plugs, alphabet)
  with reported_at('rotors'):
    daily = DailyKey(
        walzenlage=tuple(values['rotors'][0].split()),
        ringstellung=rings,
        grundstellung=grund,
        steckerverbindungen=plugs,
        reflector=reflector)
    daily.validate(catalogue)
  return daily


def serialize_keysheet(daily: DailyKey) -> List[str]:
  lines = [
      f'rotors: {" ".join(daily.walzenlage)}',
      f'rings: {" ".join(daily.ringstellung)}',
      f'grund: {daily.grundstellung}',
      f'plugs: {" ".join(daily.steckerverbindungen)}',
  ]
  if daily.reflector != 'B':
    lines.append(f'reflector: {daily.reflector}')
  return lines


def load_keysheet(path: str,
                  catalogue: Optional[Catalogue] = None) -> DailyKey:
  return parse_keysheet(records.read_lines(path), catalogue, source=path)


def store_keysheet(daily: DailyKey, path: str) -> None:
  records.write_lines(path, serialize_keysheet(daily))


def random_daily_key(key: PRNGKey,
                     catalogue: Optional[Catalogue] = None,
                     num_plugs: int = 10,
                     rotor_names: Optional[Sequence[str]] = None,
                     reflector: Optional[str] = None) -> DailyKey:
  """Draws a daily key uniformly at random.

  Args:
    key: the PRNG key.
    catalogue: the available components; default the Wehrmacht catalogue.
    num_plugs: the number of plug pairs.
    rotor_names: the rotors to choose from; default the whole catalogue.
    reflector: the reflector; default the catalogue's first one.

  Returns:
    The daily key.
  """
  catalogue = catalogue or catalogue_lib.builtin_catalogue()
  alphabet = catalogue.alphabet
  names = list(rotor_names or catalogue.rotor_names)
  if len(names) < machine.NUM_ROTORS:
    raise ValueError(
        f'Need at least {machine.NUM_ROTORS} rotors to choose from, got '
        f'{len(names)}.')
  if not 0 <= 2 * num_plugs <= alphabet.size:
    raise ValueError(
        f'`num_plugs` must be in [0, {alphabet.size // 2}], got {num_plugs}.')
  order_key, rings_key, grund_key, plugs_key = seeding.split(key, 4)
  order = seeding.permutation(order_key, len(names))[:machine.NUM_ROTORS]
  rings = seeding.randint(rings_key, 0, alphabet.size, (machine.NUM_ROTORS,))
  grund = seeding.randint(grund_key, 0, alphabet.size, (machine.NUM_ROTORS,))
  plugged = seeding.permutation(plugs_key, alphabet.size)[:2 * num_plugs]
  plugs = sorted(
      alphabet.decode(sorted(plugged[i:i + 2]))
      for i in range(0, plugged.size, 2))
  return DailyKey(
      walzenlage=tuple(names[i] for i in order),
      ringstellung=alphabet.decode(rings),
      grundstellung=alphabet.decode(grund),
      steckerverbindungen=tuple(plugs),
      reflector=reflector or catalogue.default_reflector)
