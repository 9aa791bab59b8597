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
"""Rotor and reflector catalogues.

A catalogue file holds one component per line,
`NAME<TAB>WIRING<TAB>TURNOVERS`, where a turnover field of `-` marks a
reflector. An optional `alphabet: <letters>` line selects a non-Latin alphabet;
it must precede the components.
"""

import dataclasses
import functools
import os
from typing import Iterable, Mapping, Tuple

from banbury._src.enigma import components
from banbury._src.utils import alphabet as alphabet_lib
from banbury._src.utils import errors
from banbury._src.utils import records

Alphabet = alphabet_lib.Alphabet
RotorSpec = components.RotorSpec
ReflectorSpec = components.ReflectorSpec

_DATA_DIR = os.path.join(os.path.dirname(os.path.dirname(__file__)), 'data')

BUILTIN_CATALOGUES = {
    'wehrmacht': os.path.join(_DATA_DIR, 'rotors.tsv'),
    'toy': os.path.join(_DATA_DIR, 'toy_rotors.tsv'),
    'notch_figure': os.path.join(_DATA_DIR, 'notch_figure.tsv'),
}

REFLECTOR_MARK = '-'


@dataclasses.dataclass(frozen=True)
class Catalogue:
  """The rotors and reflectors available to a machine."""

  alphabet: Alphabet
  rotors: Mapping[str, RotorSpec]
  reflectors: Mapping[str, ReflectorSpec]

  def rotor(self, name: str) -> RotorSpec:
    try:
      return self.rotors[name]
    except KeyError:
      raise errors.BanburyError(
          f'Unknown rotor `{name}`; the catalogue has '
          f'{", ".join(self.rotors)}.') from None

  def reflector(self, name: str) -> ReflectorSpec:
    try:
      return self.reflectors[name]
    except KeyError:
      raise errors.BanburyError(
          f'Unknown reflector `{name}`; the catalogue has '
          f'{", ".join(self.reflectors)}.') from None

  @property
  def rotor_names(self) -> Tuple[str, ...]:
    return tuple(self.rotors)

  @property
  def default_reflector(self) -> str:
    return next(iter(self.reflectors))


def parse_catalogue(lines: Iterable[str],
                    source: str = '<string>') -> Catalogue:
  """Parses and strictly validates catalogue lines."""
  alphabet = alphabet_lib.LATIN
  rotors = {}
  reflectors = {}
  for record in records.iter_records(lines, source, num_fields=(1, 3)):
    if len(record.fields) == 1:
      key, value = records.key_value(record, source)
      if key != 'alphabet' or rotors or reflectors:
        raise errors.RecordError(
            'only an `alphabet:` line may precede the components', source,
            record.line_number)
      try:
        alphabet = Alphabet(value)
      except ValueError as e:
        raise errors.RecordError(str(e), source, record.line_number) from None
      continue
    name, wiring, turnovers = (f.strip() for f in record.fields)
    if name in rotors or name in reflectors:
      raise errors.RecordError(
          f'duplicate component `{name}`', source, record.line_number)
    try:
      if turnovers == REFLECTOR_MARK:
        reflectors[name] = ReflectorSpec.from_letters(name, wiring, alphabet)
      else:
        rotors[name] = RotorSpec.from_letters(name, wiring, turnovers, alphabet)
    except ValueError as e:
      raise errors.RecordError(str(e), source, record.line_number) from None
  if not rotors or not reflectors:
    raise errors.RecordError(
        'a catalogue needs at least one rotor and one reflector', source)
  return Catalogue(alphabet, rotors, reflectors)


def load_catalogue(path: str) -> Catalogue:
  return parse_catalogue(records.read_lines(path), source=path)


@functools.lru_cache(maxsize=None)
def builtin_catalogue(name: str = 'wehrmacht') -> Catalogue:
  """Returns one of the catalogues shipped with the package.

  Args:
    name: `'wehrmacht'` (rotors I-V, reflectors B and C), `'toy'` (the
      six-letter teaching machine) or `'notch_figure'` (rotors 1-5 with
      turnovers Q, D, V, J, Z).

  Returns:
    The catalogue.
  """
  if name not in BUILTIN_CATALOGUES:
    raise ValueError(
        f'Unknown catalogue `{name}`; expected one of '
        f'{sorted(BUILTIN_CATALOGUES)}.')
  return load_catalogue(BUILTIN_CATALOGUES[name])


def resolve_catalogue(name_or_path: str) -> Catalogue:
  """Loads a builtin catalogue by name, or a catalogue file by path."""
  if name_or_path in BUILTIN_CATALOGUES:
    return builtin_catalogue(name_or_path)
  return load_catalogue(name_or_path)
