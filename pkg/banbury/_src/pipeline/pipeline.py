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
"""The end-to-end attack on one synthetic day.

Traffic is generated under a random daily key with a crib planted in the
first message. Banburismus scores the comparable pairs and aggregates their
evidence into deductions, Scritchmus turns these into a shortlist of right
rotors, and the bombe scans the rotor orders ending in a shortlisted rotor
against the crib. The true key is kept only to judge the outcome.

Every stage draws its randomness from its own named stream of the seed, so a
report is reproducible from the configuration and the seed alone.
"""

import contextlib
import dataclasses
import time
from typing import Iterator, List, Optional, Sequence, Tuple

from absl import logging
from banbury._src.attacks import banburismus
from banbury._src.attacks import bombe
from banbury._src.attacks import crib_graph
from banbury._src.attacks import evidence
from banbury._src.attacks import scritchmus
from banbury._src.enigma import catalogue as catalogue_lib
from banbury._src.protocol import keysheet
from banbury._src.protocol import traffic
from banbury._src.utils import errors
from banbury._src.utils import seeding

BombeCandidate = bombe.BombeCandidate
BombeConfig = bombe.BombeConfig
DayTraffic = traffic.DayTraffic
Deduction = scritchmus.Deduction
DeductionConfig = evidence.DeductionConfig
ScoreConfig = banburismus.ScoreConfig
ScritchmusConfig = scritchmus.ScritchmusConfig
ScritchmusResult = scritchmus.ScritchmusResult
TrafficModel = traffic.TrafficModel

DEFAULT_CRIB = 'WETTERVORHERSAGEBISK'
# Candidates written to the report.
MAX_REPORTED_CANDIDATES = 20


@dataclasses.dataclass(frozen=True)
class PipelineConfig:
  """Everything that determines a pipeline run apart from the seed.

  Attributes:
    catalogue: a built-in catalogue name or a catalogue file.
    rotor_names: the rotors in use; default the whole catalogue.
    num_messages: intercepts per day.
    num_plugs: plug pairs of the daily key.
    traffic: the plaintext and message-key model.
    crib: the plaintext planted in the first message.
    crib_anchor: where the crib starts in that message.
    score: the Banburismus scoring parameters.
    deduction: when summed evidence becomes a deduction.
    scritchmus: the Scritchmus search parameters.
    bombe: the bombe parameters.
    jobs: worker threads for scoring; the bombe uses `bombe.jobs`.
  """

  catalogue: str = 'wehrmacht'
  rotor_names: Optional[Tuple[str, ...]] = None
  num_messages: int = 200
  num_plugs: int = 10
  traffic: TrafficModel = TrafficModel()
  crib: str = DEFAULT_CRIB
  crib_anchor: int = 0
  score: ScoreConfig = ScoreConfig()
  deduction: DeductionConfig = DeductionConfig()
  scritchmus: ScritchmusConfig = ScritchmusConfig()
  bombe: BombeConfig = BombeConfig()
  jobs: int = 1

  def __post_init__(self):
    if self.num_messages < 0:
      raise ValueError(
          f'`num_messages` must be non-negative, got {self.num_messages}.')
    if self.rotor_names is not None:
      object.__setattr__(self, 'rotor_names', tuple(self.rotor_names))


@dataclasses.dataclass(frozen=True)
class PipelineReport:
  """Outputs of every stage of one run, and how they compare to the truth.

  Attributes:
    seed: the seed of the run.
    daily: the true daily key.
    num_intercepts: intercepts generated.
    num_pairs: comparable pairs scored.
    deductions: the aggregated deductions.
    scritchmus: the Scritchmus result.
    orders: the rotor orders scanned by the bombe.
    candidates: the bombe candidates, best first.
    true_setting: the setting the bombe should find, or None if the left
      rotor moves inside the crib window.
    ring_settings: rings recovered from the true candidate, if found.
  """

  seed: int
  daily: keysheet.DailyKey
  num_intercepts: int
  num_pairs: int
  deductions: Tuple[Deduction, ...]
  scritchmus: ScritchmusResult
  orders: Tuple[Tuple[str, ...], ...]
  candidates: Tuple[BombeCandidate, ...]
  true_setting: Optional[bombe.WindowSetting]
  ring_settings: Tuple[bombe.RingSetting, ...] = ()

  @property
  def shortlist_hit(self) -> bool:
    return self.daily.walzenlage[-1] in self.scritchmus.shortlist

  @property
  def true_candidate(self) -> Optional[BombeCandidate]:
    for candidate in self.candidates:
      if (candidate.order == self.daily.walzenlage and
          candidate.setting == self.true_setting):
        return candidate
    return None

  @property
  def bombe_hit(self) -> bool:
    return self.true_setting is not None and self.true_candidate is not None

  @property
  def success(self) -> bool:
    return self.shortlist_hit and self.bombe_hit

  def to_text(self) -> List[str]:
    """A deterministic TSV rendering; timings are logged, never reported."""
    result = self.scritchmus
    lines = [
        '# banbury pipeline report',
        f'seed\t{self.seed}',
        f'rotors\t{" ".join(self.daily.walzenlage)}',
        f'rings\t{self.daily.ringstellung}',
        f'grund\t{self.daily.grundstellung}',
        f'plugs\t{" ".join(self.daily.steckerverbindungen)}',
        f'intercepts\t{self.num_intercepts}',
        f'comparable_pairs\t{self.num_pairs}',
        f'deductions\t{len(self.deductions)}',
    ]
    lines += [f'deduction\t{d}\t{d.weight:.4f}' for d in self.deductions]
    lines += [f'chain\t{c}' for c in result.chains]
    lines += [
        f'alphabets\t{len(result.candidates)}',
        f'dropped\t{" ".join(str(d) for d in result.dropped) or "-"}',
        f'shortlist\t{" ".join(result.shortlist) or "-"}',
        f'fallback\t{_yes_no(result.fallback)}',
        f'orders_scanned\t{len(self.orders)}',
        f'candidates\t{len(self.candidates)}',
    ]
    lines += [f'candidate\t{c}'
              for c in self.candidates[:MAX_REPORTED_CANDIDATES]]
    if self.true_setting is None:
      lines.append('true_setting\t-')
    else:
      step = self.true_setting.middle_step
      lines.append(f'true_setting\t{self.true_setting.offsets}\t'
                   f'{"-" if step is None else step}')
    lines += [f'ring_setting\t{r.ringstellung}\t{r.message_key}'
              for r in self.ring_settings]
    lines += [
        f'shortlist_hit\t{_yes_no(self.shortlist_hit)}',
        f'bombe_hit\t{_yes_no(self.bombe_hit)}',
        f'success\t{_yes_no(self.success)}',
    ]
    return lines


def _yes_no(flag: bool) -> str:
  return 'yes' if flag else 'no'


@contextlib.contextmanager
def stage(name: str) -> Iterator[None]:
  """Times a stage and turns its domain errors into `StageError`."""
  start = time.perf_counter()
  try:
    yield
  except errors.StageError:
    raise
  except ValueError as e:
    raise errors.StageError(name, str(e)) from e
  logging.info('Stage %s took %.2f s.', name, time.perf_counter() - start)


def draw_day(config: PipelineConfig, seed: int) -> Optional[DayTraffic]:
  """Generates the day's traffic; None when `num_messages` is zero."""
  catalogue = catalogue_lib.resolve_catalogue(config.catalogue)
  daily = keysheet.random_daily_key(
      seeding.stream(seed, 'daily_key'), catalogue, config.num_plugs,
      config.rotor_names)
  if not config.num_messages:
    logging.warning('[Banbury]: no messages requested for seed %d.', seed)
    return None
  plan = traffic.CribPlan(config.crib, 0, config.crib_anchor)
  return traffic.sample_day(
      seeding.stream(seed, 'traffic'), daily, config.traffic,
      config.num_messages, catalogue, crib=plan)


def run_pipeline(config: PipelineConfig = PipelineConfig(),
                 seed: int = 0) -> PipelineReport:
  """Runs all stages on one synthetic day.

  Args:
    config: the configuration.
    seed: the seed of every random stream.

  Returns:
    The report.

  Raises:
    StageError: naming the stage that failed and why.
  """
  with stage('traffic'):
    catalogue = catalogue_lib.resolve_catalogue(config.catalogue)
    day = draw_day(config, seed)

  with stage('banburismus'):
    if day is None or not day.intercepts:
      raise errors.StageError('banburismus', 'no intercepts to compare')
    num_pairs = len(banburismus.pair_candidates(day.intercepts))
    rows = evidence.score_corpus(day.intercepts, config.score, config.jobs)
    deductions = evidence.aggregate_deductions(rows, config.deduction)

  with stage('scritchmus'):
    result = scritchmus.deduce(deductions, catalogue, config.scritchmus,
                               config.rotor_names)

  with stage('bombe'):
    orders = bombe.orders_for_shortlist(catalogue, result.shortlist,
                                        config.rotor_names)
    crib = crib_graph.crib_from_intercept(day.intercepts[0], config.crib,
                                          config.crib_anchor)
    candidates = bombe.bombe_search(crib, orders, catalogue, config.bombe,
                                    reflector=day.daily.reflector)
    start = day.daily.machine(catalogue, positions=day.message_keys[0])
    true_setting = bombe.crib_window_setting(start, config.crib_anchor,
                                             len(crib))

  report = PipelineReport(
      seed=seed,
      daily=day.daily,
      num_intercepts=len(day.intercepts),
      num_pairs=num_pairs,
      deductions=tuple(deductions),
      scritchmus=result,
      orders=tuple(orders),
      candidates=tuple(candidates),
      true_setting=true_setting)
  if report.true_candidate is not None:
    with stage('rings'):
      rings = bombe.slide_rings(report.true_candidate, crib, catalogue)
    report = dataclasses.replace(report, ring_settings=tuple(rings))
  logging.info('Seed %d: shortlist %s, %d candidates, success %s.', seed,
               ' '.join(result.shortlist), len(candidates), report.success)
  return report


def run_days(config: PipelineConfig, seed: int,
             days: int) -> List[PipelineReport]:
  """Runs the pipeline on `days` days seeded `seed, seed + 1, ...`."""
  if days < 1:
    raise ValueError(f'`days` must be at least 1, got {days}.')
  return [run_pipeline(config, seed + d) for d in range(days)]


def summarize(reports: Sequence[PipelineReport]) -> List[str]:
  """Per-day outcomes and the success fraction."""
  lines = ['# seed\tshortlist_hit\tbombe_hit\tsuccess']
  for r in reports:
    lines.append(f'{r.seed}\t{int(r.shortlist_hit)}\t{int(r.bombe_hit)}\t'
                 f'{int(r.success)}')
  successes = sum(r.success for r in reports)
  lines.append(f'success_rate\t{successes}/{len(reports)}')
  return lines
