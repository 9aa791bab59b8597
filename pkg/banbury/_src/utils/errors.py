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
"""Exception types raised by Banbury."""

from typing import Optional


class BanburyError(ValueError):
  """Base class for domain errors raised by Banbury."""


class AlphabetError(BanburyError):
  """A letter does not belong to the alphabet in use."""


class RecordError(BanburyError):
  """A line of a text artifact could not be parsed.

  The message is prefixed with the source and the 1-based line number, so that
  the CLI can report it on a single line.
  """

  def __init__(self,
               message: str,
               source: Optional[str] = None,
               line_number: Optional[int] = None):
    self.source = source
    self.line_number = line_number
    if source is not None and line_number is not None:
      message = f'{source}:{line_number}: {message}'
    elif source is not None:
      message = f'{source}: {message}'
    super().__init__(message)


class IndicatorMismatchError(BanburyError):
  """The two halves of a doubled indicator decipher to different keys."""


class CribMisalignedError(BanburyError):
  """A crib maps some letter to itself, which the machine never does."""


class ImpossibleEvidenceError(BanburyError):
  """Evidence with zero probability under both hypotheses."""


class StageError(BanburyError):
  """A pipeline stage failed."""

  def __init__(self, stage: str, cause: str):
    self.stage = stage
    self.cause = cause
    super().__init__(f'stage `{stage}` failed: {cause}')
