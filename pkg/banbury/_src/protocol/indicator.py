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
"""The message-key indicator procedure.

Each message is enciphered with its own message key. The operator turns the
rotors to the day's ground setting, enciphers the message key to obtain the
indicator, then turns the rotors to the message key and enciphers the text.
Until 1940 the message key was typed twice, giving a six-letter indicator.
"""

import dataclasses
from typing import Optional

from banbury._src.enigma import catalogue as catalogue_lib
from banbury._src.enigma import machine
from banbury._src.protocol import keysheet
from banbury._src.utils import errors

Catalogue = catalogue_lib.Catalogue
DailyKey = keysheet.DailyKey


@dataclasses.dataclass(frozen=True)
class Intercept:
  """A captured message: indicator and body as received.

  Attributes:
    indicator: the enciphered message key, 3 letters or 6 when doubled.
    body: the ciphertext.
    message_id: an identifier unique within the day.
    timestamp: free-form time of interception, if known.
  """

  indicator: str
  body: str
  message_id: str = ''
  timestamp: Optional[str] = None

  def __post_init__(self):
    if not self.body:
      raise errors.BanburyError(
          f'Intercept `{self.message_id}` has an empty body.')
    if len(self.indicator) not in (machine.NUM_ROTORS,
                                   2 * machine.NUM_ROTORS):
      raise errors.BanburyError(
          f'Intercept `{self.message_id}` has indicator `{self.indicator}`; '
          f'expected {machine.NUM_ROTORS} or {2 * machine.NUM_ROTORS} '
          f'letters.')

  @property
  def doubled(self) -> bool:
    return len(self.indicator) == 2 * machine.NUM_ROTORS


def _check_message_key(message_key: str, catalogue: Catalogue) -> None:
  if len(message_key) != machine.NUM_ROTORS:
    raise errors.BanburyError(
        f'A message key has {machine.NUM_ROTORS} letters, got '
        f'`{message_key}`.')
  catalogue.alphabet.encode(message_key)


def transmit(daily: DailyKey,
             message_key: str,
             plaintext: str,
             catalogue: Optional[Catalogue] = None,
             doubled: bool = False,
             message_id: str = '',
             timestamp: Optional[str] = None) -> Intercept:
  """Enciphers a message under the daily key and its own message key.

  Args:
    daily: the day's settings.
    message_key: the three window letters chosen by the operator.
    plaintext: the message, already reduced to the machine's alphabet.
    catalogue: the components named by `daily`; default Wehrmacht.
    doubled: whether to type the message key twice.
    message_id: stored on the intercept.
    timestamp: stored on the intercept.

  Returns:
    The intercept as an eavesdropper would record it.
  """
  catalogue = catalogue or catalogue_lib.builtin_catalogue()
  _check_message_key(message_key, catalogue)
  ground = daily.machine(catalogue)
  typed = message_key * 2 if doubled else message_key
  indicator, _ = machine.encipher_message(ground, typed)
  body, _ = machine.encipher_message(
      daily.machine(catalogue, positions=message_key), plaintext)
  return Intercept(indicator, body, message_id, timestamp)


def message_key_of(daily: DailyKey,
                   intercept: Intercept,
                   catalogue: Optional[Catalogue] = None) -> str:
  """Deciphers the indicator at the ground setting.

  Args:
    daily: the day's settings.
    intercept: the received message.
    catalogue: the components named by `daily`; default Wehrmacht.

  Returns:
    The message key.

  Raises:
    IndicatorMismatchError: if the two halves of a doubled indicator decipher
      to different keys.
  """
  catalogue = catalogue or catalogue_lib.builtin_catalogue()
  typed, _ = machine.decipher_message(daily.machine(catalogue),
                                      intercept.indicator)
  message_key = typed[:machine.NUM_ROTORS]
  if intercept.doubled and typed[machine.NUM_ROTORS:] != message_key:
    raise errors.IndicatorMismatchError(
        f'Intercept `{intercept.message_id}`: indicator '
        f'`{intercept.indicator}` deciphers to `{typed}`, whose halves '
        f'disagree.')
  return message_key


def receive(daily: DailyKey,
            intercept: Intercept,
            catalogue: Optional[Catalogue] = None) -> str:
  """Recovers the plaintext of `intercept`; the inverse of `transmit`.

  There is no integrity check: a corrupted body deciphers letter by letter.

  Args:
    daily: the day's settings.
    intercept: the received message.
    catalogue: the components named by `daily`; default Wehrmacht.

  Returns:
    The plaintext.
  """
  catalogue = catalogue or catalogue_lib.builtin_catalogue()
  message_key = message_key_of(daily, intercept, catalogue)
  plaintext, _ = machine.decipher_message(
      daily.machine(catalogue, positions=message_key), intercept.body)
  return plaintext
