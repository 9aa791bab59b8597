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
"""A desk-scale bombe.

The bombe tests a crib against every rotor order and every triple of rotor
offsets at the first crib letter. Ring settings are fixed at a reference
value (`A` on every rotor) during the scan, so a setting is the offsets
`(left, middle, right)` together with the crib index at which the middle
rotor steps, if it does. The left rotor is assumed not to move inside the
crib window; settings where it would are missed.

For each setting, one crib letter, the test register, is hypothesized to be
steckered to each letter of the alphabet in turn. Loops of the crib graph
through the register discard most hypotheses at once: the register's partner
must be a fixed point of the scramblers composed around each loop. The
remaining hypotheses are propagated along the crib edges, where an edge
`(p, c, i)` forces `S(c) = scrambler_i(S(p))`. A letter that needs two
partners kills the hypothesis. With the diagonal board, every deduction
`S(u) = x` also yields `S(x) = u`.
"""

import concurrent.futures
import dataclasses
import os
from typing import Dict, List, Optional, Sequence, Tuple

from absl import logging
from banbury._src.attacks import crib_graph
from banbury._src.enigma import catalogue as catalogue_lib
from banbury._src.enigma import keyspace
from banbury._src.enigma import machine
from banbury._src.utils import alphabet as alphabet_lib
from banbury._src.utils import errors
from banbury._src.utils import records
import chex
import numpy as np
import tqdm

Alphabet = alphabet_lib.Alphabet
Catalogue = catalogue_lib.Catalogue
Crib = crib_graph.Crib
CribGraph = crib_graph.CribGraph
Loop = crib_graph.Loop
MachineState = machine.MachineState
Order = Tuple[str, ...]

# Rows of hypotheses propagated at once.
_ROW_CHUNK = 1 << 16
_SHORTLIST = 'shortlist'
_SKIPPED_LINES = ('chain', 'alphabet', 'dropped', 'fallback')


@dataclasses.dataclass(frozen=True)
class BombeConfig:
  """Parameters of a bombe run.

  Attributes:
    test_register: the crib letter whose partner is hypothesized; default the
      letter of highest degree.
    diagonal: whether deductions propagate symmetrically.
    max_loop: the longest loop used to pre-filter hypotheses.
    left_offsets: if set, only these left-rotor offsets are scanned.
    jobs: the number of worker threads.
    progress: whether to show a progress bar.
  """

  test_register: Optional[str] = None
  diagonal: bool = True
  max_loop: int = crib_graph.DEFAULT_MAX_LOOP
  left_offsets: Optional[Tuple[int, ...]] = None
  jobs: int = 1
  progress: bool = False

  def __post_init__(self):
    if self.jobs < 1:
      raise ValueError(f'`jobs` must be at least 1, got {self.jobs}.')
    if self.max_loop < 2:
      raise ValueError(
          f'`max_loop` must be at least 2, got {self.max_loop}.')
    if self.left_offsets is not None:
      object.__setattr__(self, 'left_offsets',
                         tuple(sorted(set(self.left_offsets))))


@dataclasses.dataclass(frozen=True)
class SteckerHypothesis:
  """A consistent partial plugboard; `(a, a)` means `a` is unplugged."""

  pairs: Tuple[Tuple[str, str], ...]

  def __post_init__(self):
    pairs = tuple(sorted({tuple(sorted(p)) for p in self.pairs}))
    letters = [c for a, b in pairs for c in sorted({a, b})]
    if len(letters) != len(set(letters)):
      raise errors.BanburyError(
          f'Stecker pairs {pairs} give some letter two partners.')
    object.__setattr__(self, 'pairs', pairs)

  @classmethod
  def from_array(cls, partners: np.ndarray,
                 alphabet: Alphabet = alphabet_lib.LATIN
                ) -> 'SteckerHypothesis':
    """Reads `partners[u] = x` entries; `-1` marks unknown letters."""
    pairs = {(alphabet.letter(u), alphabet.letter(x))
             for u, x in enumerate(np.asarray(partners).tolist()) if x >= 0}
    return cls(tuple(pairs))

  def as_dict(self) -> Dict[str, str]:
    mapping = {}
    for a, b in self.pairs:
      mapping[a] = b
      mapping[b] = a
    return mapping

  def get(self, letter: str) -> Optional[str]:
    return self.as_dict().get(letter)

  def agrees_with(self, plugs: Sequence[str]) -> bool:
    """Whether every known partner matches the plug pairs `plugs`."""
    truth = {}
    for a, b in plugs:
      truth[a] = b
      truth[b] = a
    return all(truth.get(u, u) == x for u, x in self.as_dict().items())

  def __str__(self) -> str:
    return ' '.join(a + b for a, b in self.pairs)


@dataclasses.dataclass(frozen=True)
class BombeResult:
  """The outcome of testing one setting."""

  register: str
  hypotheses: Tuple[SteckerHypothesis, ...]

  @property
  def rejected(self) -> bool:
    return not self.hypotheses


@dataclasses.dataclass(frozen=True)
class WindowSetting:
  """Offsets at the first crib letter and the index of the middle step."""

  offsets: str
  middle_step: Optional[int] = None


@dataclasses.dataclass(frozen=True)
class BombeCandidate:
  """A setting that survived the crib.

  Attributes:
    order: the rotor names, left to right.
    setting: the offsets under reference rings and the middle step.
    hypotheses: the surviving stecker hypotheses.
  """

  order: Order
  setting: WindowSetting
  hypotheses: Tuple[SteckerHypothesis, ...]

  def __str__(self) -> str:
    step = '-' if self.setting.middle_step is None else self.setting.middle_step
    stecker = ' | '.join(str(h) for h in self.hypotheses)
    return (f'{" ".join(self.order)}\t{self.setting.offsets}\t{step}\t'
            f'{len(self.hypotheses)}\t{stecker}')


def crib_window_setting(state: MachineState, anchor: int,
                        length: int) -> Optional[WindowSetting]:
  """The setting a bombe should find for a crib enciphered from `state`.

  Args:
    state: the machine at the start of the message.
    anchor: the index of the first crib letter in the message.
    length: the crib length.

  Returns:
    The offsets at the first crib keypress and the crib index at which the
    middle rotor steps, or None if the left rotor moves inside the window.
  """
  first = anchor + (0 if state.step_after else 1)
  turnovers = [r.spec.turnovers for r in state.rotors]
  positions = machine.odometer_positions(
      state.positions, turnovers, np.arange(first, first + length), state.size)
  offsets = (positions - state.rings) % state.size
  if np.any(offsets[:, 0] != offsets[0, 0]):
    return None
  moved = np.flatnonzero(offsets[:, 1] != offsets[0, 1])
  step = int(moved[0]) if moved.size else None
  return WindowSetting(state.alphabet.decode(offsets[0]), step)


def _check_crib(crib: Crib, graph_size: int) -> None:
  if len(crib) > graph_size:
    raise errors.BanburyError(
        f'A crib of {len(crib)} letters is longer than the {graph_size}-letter '
        f'alphabet; the middle rotor could step twice inside it.')


def _window_maps(table: np.ndarray, left: int, mids: np.ndarray,
                 rights: np.ndarray, steps: np.ndarray,
                 length: int) -> np.ndarray:
  """Scramblers `[S, L, N]` at each crib index of each setting."""
  n = table.shape[0]
  i = np.arange(length)[None, :]
  middle = (mids[:, None] + (i >= steps[:, None])) % n
  right = (rights[:, None] + i) % n
  return table[left, middle, right]


def _loop_mask(maps: np.ndarray, loops: Sequence[Loop],
               register: str) -> np.ndarray:
  """Hypotheses `[S, N]` that survive every loop."""
  num_settings, _, n = maps.shape
  identity = np.arange(n)
  mask = np.ones((num_settings, n), dtype=bool)
  for loop in loops:
    start = register if register in loop.letters else loop.letters[0]
    x = np.broadcast_to(identity, (num_settings, n))
    for e in loop.starting_at(start):
      x = np.take_along_axis(maps[:, e, :], x, axis=1)
    fixed = x == identity
    if start == register:
      mask &= fixed
    else:
      mask &= fixed.any(axis=1, keepdims=True)
  return mask


def _consistent(partners: np.ndarray, diagonal: bool) -> np.ndarray:
  """Checks symmetry and injectivity, closing under symmetry if diagonal."""
  b, n = partners.shape
  rows = np.arange(b)
  ok = np.ones(b, dtype=bool)
  for u in range(n):
    x = partners[:, u]
    known = x >= 0
    back = partners[rows, np.maximum(x, 0)]
    ok &= ~(known & (back >= 0) & (back != u))
    if diagonal:
      fill = known & (back < 0)
      partners[rows[fill], x[fill]] = u
  keyed = np.where(partners >= 0, partners, n + np.arange(n))
  keyed = np.sort(keyed, axis=1)
  ok &= ~np.any(keyed[:, 1:] == keyed[:, :-1], axis=1)
  return ok


def _propagate(maps: np.ndarray, owners: np.ndarray, hypotheses: np.ndarray,
               plain: np.ndarray, cipher: np.ndarray, register: int,
               diagonal: bool) -> Tuple[np.ndarray, np.ndarray]:
  """Unit propagation of `S(register) = hypothesis` for each row."""
  n = maps.shape[-1]
  partners = np.full((owners.size, n), -1, dtype=np.int64)
  partners[:, register] = hypotheses
  alive = np.ones(owners.size, dtype=bool)
  changed = True
  while changed:
    before = partners.copy()
    for i, (p, c) in enumerate(zip(plain, cipher)):
      for u, v in ((p, c), (c, p)):
        source = partners[:, u]
        known = source >= 0
        implied = maps[owners, i, np.maximum(source, 0)]
        current = partners[:, v]
        alive &= ~(known & (current >= 0) & (current != implied))
        partners[:, v] = np.where(known & (current < 0), implied, current)
    alive &= _consistent(partners, diagonal)
    changed = not np.array_equal(partners, before)
  return partners, alive


@dataclasses.dataclass(frozen=True)
class _Problem:
  """A crib prepared for testing."""

  plain: np.ndarray
  cipher: np.ndarray
  register: str
  register_index: int
  loops: Tuple[Loop, ...]
  diagonal: bool


def _prepare(crib: Crib, alphabet: Alphabet,
             config: BombeConfig) -> _Problem:
  graph = crib_graph.build_crib_graph(crib, alphabet)
  _check_crib(crib, alphabet.size)
  register = crib_graph.choose_register(graph, config.test_register)
  loops = crib_graph.find_loops(graph, config.max_loop)
  logging.vlog(1, 'Crib has %d loops; test register %s.', len(loops),
               register)
  return _Problem(alphabet.encode(crib.plain), alphabet.encode(crib.cipher),
                  register, alphabet.index(register), tuple(loops),
                  config.diagonal)


def _survivors(maps: np.ndarray,
               problem: _Problem) -> Tuple[np.ndarray, np.ndarray]:
  """Surviving `(setting index, partners)` rows for scramblers `[S, L, N]`."""
  mask = _loop_mask(maps, problem.loops, problem.register)
  owners, hypotheses = np.nonzero(mask)
  kept_owners = [np.zeros(0, dtype=np.int64)]
  kept = [np.zeros((0, maps.shape[-1]), dtype=np.int64)]
  for start in range(0, owners.size, _ROW_CHUNK):
    chunk = slice(start, start + _ROW_CHUNK)
    partners, alive = _propagate(
        maps, owners[chunk], hypotheses[chunk], problem.plain, problem.cipher,
        problem.register_index, problem.diagonal)
    kept_owners.append(owners[chunk][alive])
    kept.append(partners[alive])
  return np.concatenate(kept_owners), np.concatenate(kept)


def _hypotheses(partners: np.ndarray,
                alphabet: Alphabet) -> Tuple[SteckerHypothesis, ...]:
  return tuple(SteckerHypothesis.from_array(p, alphabet) for p in partners)


def _components(catalogue: Catalogue, order: Sequence[str],
                reflector: Optional[str]):
  rotors = [catalogue.rotor(name) for name in order]
  return rotors, catalogue.reflector(reflector or catalogue.default_reflector)


def bombe_test(crib: Crib,
               order: Sequence[str],
               setting: WindowSetting,
               catalogue: Optional[Catalogue] = None,
               config: BombeConfig = BombeConfig(),
               reflector: Optional[str] = None) -> BombeResult:
  """Tests one rotor order and setting against a crib.

  Args:
    crib: the crib.
    order: the rotor names, left to right.
    setting: offsets at the first crib letter under reference rings, and the
      crib index at which the middle rotor steps.
    catalogue: the available components; default Wehrmacht.
    config: the test register and diagonal board.
    reflector: the reflector name; default the catalogue's first.

  Returns:
    The register and the stecker hypotheses that survive. A crib in which
    some letter faces itself is rejected without search.
  """
  catalogue = catalogue or catalogue_lib.builtin_catalogue()
  alphabet = catalogue.alphabet
  try:
    problem = _prepare(crib, alphabet, config)
  except errors.CribMisalignedError as e:
    logging.warning('[Banbury]: %s', e)
    return BombeResult(config.test_register or '', ())
  offsets = alphabet.encode(setting.offsets)
  chex.assert_shape(offsets, (machine.NUM_ROTORS,))
  length = len(crib)
  step = setting.middle_step
  if step is not None and step < 1:
    raise ValueError(f'`middle_step` must be at least 1, got {step}.')
  if step is None or step > length:
    step = length
  i = np.arange(length)
  n = alphabet.size
  positions = np.stack([
      np.full(length, offsets[0]),
      (offsets[1] + (i >= step)) % n,
      (offsets[2] + i) % n,
  ], axis=-1)
  rotors, reflector_spec = _components(catalogue, order, reflector)
  maps = machine.scrambler_maps(rotors, reflector_spec,
                                np.zeros(len(rotors), dtype=np.int64),
                                positions)[None]
  _, partners = _survivors(maps, problem)
  return BombeResult(problem.register, _hypotheses(partners, alphabet))


def orders_for_shortlist(catalogue: Catalogue,
                         shortlist: Sequence[str],
                         rotor_names: Optional[Sequence[str]] = None
                        ) -> List[Order]:
  """Rotor orders whose right-hand rotor is in `shortlist`."""
  names = rotor_names or catalogue.rotor_names
  return [o for o in keyspace.rotor_orders(names, machine.NUM_ROTORS)
          if o[-1] in shortlist]


def parse_orders(lines: Sequence[str],
                 catalogue: Catalogue,
                 rotor_names: Optional[Sequence[str]] = None,
                 source: str = '<string>') -> List[Order]:
  """Reads rotor orders to scan.

  A line of three rotor names is an order. A single name, or a
  `shortlist` line as written by Scritchmus, names right-hand rotors and
  stands for every order ending in them. Other Scritchmus output lines are
  skipped.

  Args:
    lines: the lines of the file.
    catalogue: the available components.
    rotor_names: the rotors in use; default the whole catalogue.
    source: a name for error messages.

  Returns:
    The orders, without repeats, in order of first mention.
  """
  orders = []
  for record in records.iter_records(lines, source, separator=None):
    tokens = record.fields[0].split()
    if tokens[0] in _SKIPPED_LINES:
      continue
    try:
      if tokens[0] == _SHORTLIST or len(tokens) == 1:
        names = tokens[1:] if tokens[0] == _SHORTLIST else tokens
        for name in names:
          catalogue.rotor(name)
        orders.extend(orders_for_shortlist(catalogue, names, rotor_names))
      elif len(tokens) == machine.NUM_ROTORS:
        for name in tokens:
          catalogue.rotor(name)
        orders.append(tuple(tokens))
      else:
        raise errors.BanburyError(
            f'expected a rotor order or right-hand rotors, got '
            f'`{record.fields[0]}`')
    except ValueError as e:
      raise errors.RecordError(str(e), source, record.line_number) from None
  return list(dict.fromkeys(orders))


def load_orders(path: str, catalogue: Catalogue,
                rotor_names: Optional[Sequence[str]] = None) -> List[Order]:
  return parse_orders(records.read_lines(path), catalogue, rotor_names,
                      source=path)


@dataclasses.dataclass(frozen=True)
class _UnitResult:
  settings: np.ndarray  # [K, 4]: left, middle, right, middle step.
  owners: np.ndarray  # [H] indices into `settings`.
  partners: np.ndarray  # [H, N]


def _scrambler_table(rotors, reflector, n: int) -> np.ndarray:
  grid = np.moveaxis(np.indices((n, n, n)), 0, -1)
  table = machine.scrambler_maps(rotors, reflector, np.zeros(3, np.int64),
                                 grid)
  return table.astype(np.int16)


def _run_unit(table: np.ndarray, left: int, problem: _Problem) -> _UnitResult:
  n = table.shape[0]
  length = problem.plain.size
  mids, rights, steps = (a.reshape(-1) for a in np.meshgrid(
      np.arange(n), np.arange(n), np.arange(1, length + 1), indexing='ij'))
  maps = _window_maps(table, left, mids, rights, steps, length)
  owners, partners = _survivors(maps, problem)
  hit, owners = np.unique(owners, return_inverse=True)
  settings = np.stack(
      [np.full(hit.size, left), mids[hit], rights[hit], steps[hit]], axis=-1)
  return _UnitResult(settings.astype(np.int64), owners.reshape(-1), partners)


def _fingerprint(crib: Crib, orders: Sequence[Order], reflector: str,
                 config: BombeConfig) -> str:
  return '|'.join([
      crib.plain, crib.cipher, str(crib.anchor), reflector,
      ';'.join(' '.join(o) for o in orders), repr(config.test_register),
      repr(config.diagonal), repr(config.max_loop), repr(config.left_offsets),
  ])


def _load_checkpoint(path: str, fingerprint: str,
                     n: int) -> Dict[int, _UnitResult]:
  if not os.path.exists(path):
    return {}
  with np.load(path) as data:
    if str(data['fingerprint']) != fingerprint:
      raise errors.BanburyError(
          f'Checkpoint `{path}` belongs to a different crib, rotor list or '
          f'configuration.')
    done = data['done']
    settings, setting_unit = data['settings'], data['setting_unit']
    owners, partners = data['owners'], data['partners']
  results = {}
  for unit in done.tolist():
    rows = np.flatnonzero(setting_unit == unit)
    local = np.full(setting_unit.size, -1, dtype=np.int64)
    local[rows] = np.arange(rows.size)
    hyp = np.isin(owners, rows)
    results[unit] = _UnitResult(settings[rows].reshape(-1, 4),
                                local[owners[hyp]],
                                partners[hyp].reshape(-1, n))
  logging.info('Resuming from %s: %d units done.', path, len(results))
  return results


def _store_checkpoint(path: str, fingerprint: str,
                      results: Dict[int, _UnitResult], n: int) -> None:
  units = sorted(results)
  settings, setting_unit, owners, partners = [], [], [], []
  offset = 0
  for unit in units:
    r = results[unit]
    settings.append(r.settings)
    setting_unit.append(np.full(len(r.settings), unit, dtype=np.int64))
    owners.append(r.owners + offset)
    partners.append(r.partners)
    offset += len(r.settings)
  tmp = path + '.tmp'
  with open(tmp, 'wb') as f:
    np.savez(
        f,
        fingerprint=np.array(fingerprint),
        done=np.array(units, dtype=np.int64),
        settings=np.concatenate(settings or [np.zeros((0, 4), np.int64)]),
        setting_unit=np.concatenate(setting_unit or [np.zeros(0, np.int64)]),
        owners=np.concatenate(owners or [np.zeros(0, np.int64)]),
        partners=np.concatenate(partners or [np.zeros((0, n), np.int64)]))
  os.replace(tmp, path)


def bombe_search(crib: Crib,
                 orders: Sequence[Sequence[str]],
                 catalogue: Optional[Catalogue] = None,
                 config: BombeConfig = BombeConfig(),
                 checkpoint: Optional[str] = None,
                 reflector: Optional[str] = None) -> List[BombeCandidate]:
  """Scans every setting of every rotor order against a crib.

  The scan is split into work units, one per rotor order and left offset.
  Units run on `config.jobs` threads; results are merged by unit index, so
  the output does not depend on the number of workers.

  Args:
    crib: the crib.
    orders: rotor orders to scan, e.g. from `orders_for_shortlist`.
    catalogue: the available components; default Wehrmacht.
    config: the bombe parameters.
    checkpoint: if set, an `.npz` file recording finished units; an existing
      file for the same problem is resumed.
    reflector: the reflector name; default the catalogue's first.

  Returns:
    The surviving candidates, fewest hypotheses first, then in order of
    `orders`, offsets and middle step.
  """
  catalogue = catalogue or catalogue_lib.builtin_catalogue()
  alphabet = catalogue.alphabet
  n = alphabet.size
  orders = [tuple(o) for o in orders]
  if not orders:
    return []
  try:
    problem = _prepare(crib, alphabet, config)
  except errors.CribMisalignedError as e:
    logging.warning('[Banbury]: %s', e)
    return []
  reflector = reflector or catalogue.default_reflector
  lefts = config.left_offsets
  lefts = tuple(range(n)) if lefts is None else lefts
  if any(not 0 <= left < n for left in lefts):
    raise ValueError(f'`left_offsets` must lie in [0, {n}), got {lefts}.')
  units = [(o, k) for o in range(len(orders)) for k in range(len(lefts))]
  fingerprint = _fingerprint(crib, orders, reflector, config)
  results = (_load_checkpoint(checkpoint, fingerprint, n)
             if checkpoint else {})
  pending = [u for u in range(len(units)) if u not in results]
  tables = {}

  def table_for(o: int) -> np.ndarray:
    if o not in tables:
      rotors, spec = _components(catalogue, orders[o], reflector)
      tables[o] = _scrambler_table(rotors, spec, n)
    return tables[o]

  def run(unit: int) -> _UnitResult:
    o, k = units[unit]
    return _run_unit(table_for(o), lefts[k], problem)

  logging.info('Bombe: %d orders, %d of %d units to run.', len(orders),
               len(pending), len(units))
  # Workers only read the prebuilt tables.
  for o in sorted({units[u][0] for u in pending}):
    table_for(o)
  with tqdm.tqdm(total=len(pending), desc='bombe',
                 disable=not config.progress) as bar:
    with concurrent.futures.ThreadPoolExecutor(
        max_workers=config.jobs) as executor:
      for unit, result in zip(pending, executor.map(run, pending)):
        results[unit] = result
        if checkpoint:
          _store_checkpoint(checkpoint, fingerprint, results, n)
        bar.update(1)

  candidates = []
  for unit in sorted(results):
    o = units[unit][0]
    result = results[unit]
    for k, (left, mid, right, step) in enumerate(result.settings.tolist()):
      offsets = alphabet.decode([left, mid, right])
      setting = WindowSetting(offsets, None if step == len(crib) else step)
      partners = result.partners[result.owners == k]
      candidates.append((o, BombeCandidate(orders[o], setting,
                                           _hypotheses(partners, alphabet))))
  candidates.sort(key=lambda item: (
      len(item[1].hypotheses), item[0], item[1].setting.offsets,
      len(crib) if item[1].setting.middle_step is None
      else item[1].setting.middle_step))
  logging.info('Bombe: %d candidates.', len(candidates))
  return [c for _, c in candidates]


@dataclasses.dataclass(frozen=True)
class RingSetting:
  """Rings and window positions that realize a candidate.

  Attributes:
    ringstellung: ring letters, the left one fixed at the first letter.
    crib_start: the window at the first crib keypress.
    message_key: the window before the first keypress of the message.
  """

  ringstellung: str
  crib_start: str
  message_key: str


def slide_rings(candidate: BombeCandidate,
                crib: Crib,
                catalogue: Optional[Catalogue] = None) -> List[RingSetting]:
  """Recovers ring settings consistent with a candidate's turnover timing.

  Advancing a ring and a window position together leaves the wiring offsets
  unchanged, so a candidate found under reference rings stands for every
  ring choice. Only the ring of the right rotor decides when the middle one
  steps, and only that of the middle rotor decides whether the left one
  moves; both are checked against the crib window by stepping the machine.

  Args:
    candidate: a bombe candidate.
    crib: the crib it was found with; its anchor locates the window.
    catalogue: the available components; default Wehrmacht.

  Returns:
    The consistent settings, by ring letters.
  """
  catalogue = catalogue or catalogue_lib.builtin_catalogue()
  alphabet = catalogue.alphabet
  n = alphabet.size
  turnovers = [catalogue.rotor(name).turnovers for name in candidate.order]
  offsets = alphabet.encode(candidate.setting.offsets)
  length = len(crib)
  starts = np.moveaxis(np.indices((n, n, n)), 0, -1).reshape(-1, 3)
  steps = np.arange(crib.anchor + 1, crib.anchor + 1 + length)
  paths = machine.odometer_positions(starts, turnovers, steps, n)
  first = paths[:, 0, :]
  inverse = np.empty(n ** 3, dtype=np.int64)
  inverse[(first[:, 0] * n + first[:, 1]) * n + first[:, 2]] = np.arange(
      n ** 3)
  i = np.arange(length)
  step = length if candidate.setting.middle_step is None else (
      candidate.setting.middle_step)
  expected = np.stack([np.full(length, offsets[0]),
                       offsets[1] + (i >= step), offsets[2] + i], axis=-1)
  found = []
  for ring_m in range(n):
    for ring_r in range(n):
      rings = np.array([0, ring_m, ring_r])
      window = (offsets + rings) % n
      start = inverse[(window[0] * n + window[1]) * n + window[2]]
      if np.array_equal(paths[start], (expected + rings) % n):
        found.append(RingSetting(alphabet.decode(rings),
                                 alphabet.decode(window),
                                 alphabet.decode(starts[start])))
  logging.vlog(1, 'Candidate %s: %d ring settings.', candidate.setting,
               len(found))
  return found
