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
"""Intercept corpora.

One intercept per line, `ID<TAB>INDICATOR<TAB>CIPHERTEXT[<TAB>TIMESTAMP]`, with
the ciphertext written in groups of five letters as on a radio log.
"""

from typing import Iterable, List, Sequence

from banbury._src.protocol import indicator
from banbury._src.utils import alphabet as alphabet_lib
from banbury._src.utils import errors
from banbury._src.utils import records

Alphabet = alphabet_lib.Alphabet
Intercept = indicator.Intercept

GROUP_SIZE = 5


def to_groups(text: str, size: int = GROUP_SIZE) -> str:
  return ' '.join(text[i:i + size] for i in range(0, len(text), size))


def parse_corpus(lines: Iterable[str],
                 alphabet: Alphabet = alphabet_lib.LATIN,
                 source: str = '<string>') -> List[Intercept]:
  """Parses corpus lines into intercepts; ids must be unique."""
  intercepts = []
  seen = set()
  for record in records.iter_records(lines, source, num_fields=(3, 4)):
    message_id, indicator_text, body = (f.strip() for f in record.fields[:3])
    timestamp = record.fields[3].strip() if len(record.fields) == 4 else None
    if message_id in seen:
      raise errors.RecordError(
          f'duplicate intercept id `{message_id}`', source, record.line_number)
    seen.add(message_id)
    body = ''.join(body.split())
    try:
      alphabet.encode(indicator_text)
      alphabet.encode(body)
      intercepts.append(
          Intercept(indicator_text, body, message_id, timestamp or None))
    except errors.BanburyError as e:
      raise errors.RecordError(str(e), source, record.line_number) from None
  return intercepts


def serialize_corpus(intercepts: Sequence[Intercept]) -> List[str]:
  lines = []
  for intercept in intercepts:
    fields = [intercept.message_id, intercept.indicator,
              to_groups(intercept.body)]
    if intercept.timestamp is not None:
      fields.append(intercept.timestamp)
    lines.append('\t'.join(fields))
  return lines


def load_corpus(path: str,
                alphabet: Alphabet = alphabet_lib.LATIN) -> List[Intercept]:
  return parse_corpus(records.read_lines(path), alphabet, source=path)


def store_corpus(intercepts: Sequence[Intercept], path: str) -> None:
  records.write_lines(path, serialize_corpus(intercepts))
