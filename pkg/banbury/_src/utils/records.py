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
"""Line-oriented text records shared by all artifact formats.

Catalogues, key sheets, frequency tables, corpora and evidence tables are all
UTF-8 text with one record per line. Blank lines and lines starting with `#`
are ignored; every parse error carries the 1-based line number.
"""

import os
from typing import Iterable, Iterator, List, NamedTuple, Optional, Sequence

from banbury._src.utils import errors


class Record(NamedTuple):
  line_number: int
  fields: List[str]


def iter_records(lines: Iterable[str],
                 source: str = '<string>',
                 separator: Optional[str] = '\t',
                 num_fields: Optional[Sequence[int]] = None
                ) -> Iterator[Record]:
  """Yields the non-comment records of `lines`, split on `separator`.

  Args:
    lines: the lines of the artifact, with or without trailing newlines.
    source: a name used in error messages, usually the path.
    separator: field separator; `None` keeps each line as a single field.
    num_fields: if given, the allowed field counts of a record.

  Yields:
    A `Record` per meaningful line.

  Raises:
    RecordError: if a record has a field count outside `num_fields`.
  """
  for line_number, line in enumerate(lines, start=1):
    line = line.rstrip('\r\n')
    if not line.strip() or line.lstrip().startswith('#'):
      continue
    fields = [line] if separator is None else line.split(separator)
    if num_fields is not None and len(fields) not in num_fields:
      raise errors.RecordError(
          f'expected {" or ".join(map(str, num_fields))} fields separated by '
          f'{separator!r}, got {len(fields)}', source, line_number)
    yield Record(line_number, fields)


def read_lines(path: str) -> List[str]:
  if not os.path.exists(path):
    raise errors.RecordError('no such file', path)
  with open(path, encoding='utf-8') as f:
    return f.readlines()


def write_lines(path: str, lines: Iterable[str]) -> None:
  with open(path, 'w', encoding='utf-8') as f:
    for line in lines:
      f.write(line + '\n')


def key_value(record: Record, source: str) -> List[str]:
  """Splits a `key: value` record into `[key, value]`."""
  line = record.fields[0]
  if ':' not in line:
    raise errors.RecordError(
        f'expected `key: value`, got `{line}`', source, record.line_number)
  key, value = line.split(':', 1)
  return [key.strip().lower(), value.strip()]
