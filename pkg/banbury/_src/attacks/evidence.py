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
"""Evidence tables and their aggregation into deductions.

Every comparable pair of the day is scored at every shift. All pairs whose
indicators end in the same two letters share their key-letter distance, so
their weights add up shift by shift; a clear winner becomes a deduction.
"""

import concurrent.futures
import dataclasses
from typing import Dict, Iterable, List, Sequence, Tuple

from absl import logging
from banbury._src.attacks import banburismus
from banbury._src.attacks import scritchmus
from banbury._src.protocol import indicator
from banbury._src.utils import errors
from banbury._src.utils import records

Deduction = scritchmus.Deduction
Intercept = indicator.Intercept
ScoreConfig = banburismus.ScoreConfig

_NO_RUNS = '-'


@dataclasses.dataclass(frozen=True)
class EvidenceRow:
  """The weight of one shift of one pair.

  Attributes:
    pair_id: `ID:INDICATOR/ID:INDICATOR` of the two intercepts.
    shift: the shift of the second message under the first.
    runs: the runs of matches.
    matches: the number of matches.
    overlap: the number of aligned letters.
    weight: decibans in favour of depth.
  """

  pair_id: str
  shift: int
  runs: Tuple[int, ...]
  matches: int
  overlap: int
  weight: float


def pair_id(first: Intercept, second: Intercept) -> str:
  return (f'{first.message_id}:{first.indicator}/'
          f'{second.message_id}:{second.indicator}')


def pair_letters(identifier: str) -> Tuple[str, str]:
  """The third indicator letters of the two intercepts of a pair."""
  halves = identifier.split('/')
  indicators = [h.rsplit(':', 1)[-1] for h in halves]
  if (len(halves) != 2 or any(':' not in h for h in halves) or
      any(len(i) < 3 for i in indicators)):
    raise errors.BanburyError(
        f'Malformed pair id `{identifier}`; expected '
        f'`ID:INDICATOR/ID:INDICATOR`.')
  return indicators[0][2], indicators[1][2]


def _score_pair(pair: Tuple[Intercept, Intercept],
                config: ScoreConfig) -> List[EvidenceRow]:
  first, second = pair
  identifier = pair_id(first, second)
  return [
      EvidenceRow(identifier, e.shift, e.runs, e.matches, e.overlap, e.weight)
      for e in banburismus.rank_shifts(first.body, second.body, config)
  ]


def score_corpus(corpus: Sequence[Intercept],
                 config: ScoreConfig = ScoreConfig(),
                 jobs: int = 1) -> List[EvidenceRow]:
  """Scores every comparable pair at every admissible shift.

  Args:
    corpus: the day's intercepts.
    config: the scoring parameters.
    jobs: the number of worker threads.

  Returns:
    The rows of all pairs in `pair_candidates` order, each pair's shifts
    best first.
  """
  if jobs < 1:
    raise ValueError(f'`jobs` must be at least 1, got {jobs}.')
  pairs = banburismus.pair_candidates(corpus)
  logging.info('Scoring %d comparable pairs.', len(pairs))
  if jobs == 1:
    scored = [_score_pair(p, config) for p in pairs]
  else:
    with concurrent.futures.ThreadPoolExecutor(max_workers=jobs) as executor:
      scored = list(executor.map(lambda p: _score_pair(p, config), pairs))
  return [row for rows in scored for row in rows]


@dataclasses.dataclass(frozen=True)
class DeductionConfig:
  """When summed evidence for a letter pair becomes a deduction.

  Attributes:
    threshold: decibans the best shift must reach.
    margin: decibans by which it must beat the runner-up.
  """

  threshold: float = 25.
  margin: float = 6.

  def __post_init__(self):
    if self.margin < 0:
      raise ValueError(f'`margin` must be non-negative, got {self.margin}.')


def aggregate_deductions(
    rows: Sequence[EvidenceRow],
    config: DeductionConfig = DeductionConfig()) -> List[Deduction]:
  """Sums weights per third-letter pair and shift and keeps clear winners.

  Swapping the two messages of a pair negates the shift. A winning shift
  `s > 0` between letters `x` (first) and `y` reads `y = x + s`; a negative
  shift `-e` means the messages are in depth the other way round the circle
  and reads `x = y + e`.

  Args:
    rows: evidence rows of any number of pairs.
    config: the threshold and margin.

  Returns:
    The deductions, ordered by letter pair.
  """
  totals: Dict[Tuple[str, str], Dict[int, float]] = {}
  for row in rows:
    x, y = pair_letters(row.pair_id)
    if x == y:
      continue
    shift = row.shift
    if x > y:
      x, y, shift = y, x, -shift
    by_shift = totals.setdefault((x, y), {})
    by_shift[shift] = by_shift.get(shift, 0.) + row.weight
  deductions = []
  for (x, y), by_shift in sorted(totals.items()):
    ranked = sorted(by_shift.items(),
                    key=lambda item: (-item[1], abs(item[0]), item[0] < 0))
    shift, best = ranked[0]
    runner_up = ranked[1][1] if len(ranked) > 1 else float('-inf')
    if best < config.threshold or best - runner_up < config.margin:
      continue
    if shift > 0:
      deductions.append(Deduction(y, x, shift, best))
    else:
      deductions.append(Deduction(x, y, -shift, best))
    logging.vlog(1, 'Deduced %s from %.1f db.', deductions[-1], best)
  logging.info('Aggregated %d letter pairs into %d deductions.', len(totals),
               len(deductions))
  return deductions


def serialize_evidence(rows: Iterable[EvidenceRow]) -> List[str]:
  lines = ['# pair_id\tshift\truns\tM\tN\tweight_db']
  for row in rows:
    runs = ','.join(map(str, row.runs)) or _NO_RUNS
    lines.append(f'{row.pair_id}\t{row.shift}\t{runs}\t{row.matches}\t'
                 f'{row.overlap}\t{row.weight:.4f}')
  return lines


def _parse_runs(text: str) -> Tuple[int, ...]:
  if text == _NO_RUNS:
    return ()
  return tuple(int(r) for r in text.split(','))


def parse_evidence(lines: Iterable[str],
                   source: str = '<string>') -> List[EvidenceRow]:
  rows = []
  for record in records.iter_records(lines, source, num_fields=(6,)):
    identifier, shift, runs, matches, overlap, weight = record.fields
    try:
      pair_letters(identifier)
      rows.append(EvidenceRow(identifier, int(shift), _parse_runs(runs),
                              int(matches), int(overlap), float(weight)))
    except ValueError as e:
      raise errors.RecordError(str(e), source, record.line_number) from None
  return rows


def serialize_deductions(deductions: Iterable[Deduction]) -> List[str]:
  lines = ['# letter_a\tletter_b\toffset\tweight_db']
  for d in deductions:
    lines.append(f'{d.letter_a}\t{d.letter_b}\t{d.offset}\t{d.weight:.4f}')
  return lines


def parse_deductions(lines: Iterable[str],
                     source: str = '<string>') -> List[Deduction]:
  deductions = []
  for record in records.iter_records(lines, source, num_fields=(4,)):
    a, b, offset, weight = record.fields
    try:
      deductions.append(Deduction(a, b, int(offset), float(weight)))
    except ValueError as e:
      raise errors.RecordError(str(e), source, record.line_number) from None
  return deductions


def read_deductions(lines: Sequence[str],
                    config: DeductionConfig = DeductionConfig(),
                    source: str = '<string>') -> List[Deduction]:
  """Reads a deductions table, or aggregates an evidence table."""
  first = next(records.iter_records(lines, source), None)
  if first is not None and len(first.fields) == 6:
    return aggregate_deductions(parse_evidence(lines, source), config)
  return parse_deductions(lines, source)


def load_evidence(path: str) -> List[EvidenceRow]:
  return parse_evidence(records.read_lines(path), source=path)


def store_evidence(rows: Iterable[EvidenceRow], path: str) -> None:
  records.write_lines(path, serialize_evidence(rows))


def load_deductions(path: str,
                    config: DeductionConfig = DeductionConfig()
                   ) -> List[Deduction]:
  return read_deductions(records.read_lines(path), config, source=path)


def store_deductions(deductions: Iterable[Deduction], path: str) -> None:
  records.write_lines(path, serialize_deductions(deductions))
