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
"""The `banbury` command line.

Usage: `banbury <group> <command> [--flags]`, e.g.

  banbury classical encipher --cipher=caesar --key=3 --text='VENI VIDI VICI'
  banbury traffic generate --seed=7 --key_out=day.key --out=day.tsv
  banbury banburismus score --corpus=day.tsv --out=evidence.tsv
  banbury scritchmus deduce --evidence=evidence.tsv --out=shortlist.txt
  banbury bombe run --crib=crib.txt --orders=shortlist.txt
  banbury pipeline run --seed=42

Tables are written to `--out`, by default standard output. A failing command
prints one `error:` line and exits with status 1; a usage error exits with
status 2.
"""

import sys
from typing import Callable, Dict, List, Optional, Sequence, TextIO, Tuple

from absl import app
from absl import flags
from absl import logging
from banbury._src.attacks import banburismus
from banbury._src.attacks import bombe
from banbury._src.attacks import crib_graph
from banbury._src.attacks import evidence
from banbury._src.attacks import scritchmus
from banbury._src.classical import ciphers
from banbury._src.classical import frequency
from banbury._src.classical import kasiski
from banbury._src.enigma import catalogue as catalogue_lib
from banbury._src.enigma import keyspace
from banbury._src.enigma import machine
from banbury._src.inference import bayes
from banbury._src.pipeline import pipeline
from banbury._src.protocol import corpus
from banbury._src.protocol import keysheet
from banbury._src.protocol import traffic
from banbury._src.utils import alphabet as alphabet_lib
from banbury._src.utils import records
from banbury._src.utils import seeding

FLAGS = flags.FLAGS

# General.
flags.DEFINE_integer('seed', 0, 'Seed of every random stream; the '
                     f'`{seeding.SEED_ENV_VAR}` variable overrides it.')
flags.DEFINE_integer('jobs', 1, 'Worker threads.')
flags.DEFINE_string('out', '-', 'Output file; `-` is standard output.')
flags.DEFINE_string('catalogue', 'wehrmacht',
                    'Built-in catalogue name or catalogue file.')
flags.DEFINE_list('rotor_names', None,
                  'Rotors in use; default the whole catalogue.')

# Classical ciphers.
flags.DEFINE_enum('cipher', 'caesar',
                  ['scytale', 'caesar', 'atbash', 'albam', 'vigenere'],
                  'Classical cipher.')
flags.DEFINE_string('key', None,
                    'Caesar shift or Vigenère keyword.')
flags.DEFINE_integer('width', None, 'Scytale width.')
flags.DEFINE_string('text', None, 'Input text.')
flags.DEFINE_integer('min_ngram', 3, 'Shortest repeat counted by Kasiski.')

# Machine and traffic.
flags.DEFINE_string('day', None, 'Key sheet file.')
flags.DEFINE_string('positions', None,
                    'Start window of the machine; default the ground '
                    'setting.')
flags.DEFINE_integer('num_messages', 200, 'Messages per day.')
flags.DEFINE_alias('n', 'num_messages')
flags.DEFINE_integer('num_plugs', 10, 'Plug pairs of a random daily key.')
flags.DEFINE_string('key_out', None,
                    'Where `traffic generate` writes the daily key.')
flags.DEFINE_string('crib_text', None,
                    'Plaintext planted in the first message; `pipeline run` '
                    f'defaults to `{pipeline.DEFAULT_CRIB}`.')
flags.DEFINE_integer('crib_anchor', 0, 'Position of the planted crib.')
flags.DEFINE_bool('doubled', False, 'Whether indicators are doubled.')
flags.DEFINE_string('plaintext_corpus', None,
                    'Draw plaintexts from windows of this text file.')
flags.DEFINE_string('frequency_table', None,
                    'Letter frequency table of the plaintext model.')

# Banburismus and Scritchmus.
flags.DEFINE_string('corpus', None, 'Intercept corpus file.')
flags.DEFINE_bool('use_bonus', False, 'Whether match runs earn a bonus.')
flags.DEFINE_bool('use_malus', True, 'Whether large shifts are penalized.')
flags.DEFINE_integer('min_overlap', 10, 'Shortest overlap scored.')
flags.DEFINE_string('evidence', None,
                    'Evidence table, or an already aggregated deductions '
                    'table.')
flags.DEFINE_float('threshold', 25., 'Decibans a deduction must reach.')
flags.DEFINE_float('margin', 6., 'Decibans it must beat the runner-up by.')
flags.DEFINE_float('min_weight', 7., 'Lightest deduction Scritchmus uses.')

# Bombe.
flags.DEFINE_string('crib', None, 'Crib file.')
flags.DEFINE_string('orders', None,
                    'Rotor orders or Scritchmus output; default every '
                    'order.')
flags.DEFINE_string('checkpoint', None, 'Bombe checkpoint `.npz` file.')
flags.DEFINE_string('test_register', None, 'Crib letter to hypothesize on.')
flags.DEFINE_bool('diagonal', True, 'Whether deductions propagate '
                  'symmetrically.')
flags.DEFINE_integer('max_loop', crib_graph.DEFAULT_MAX_LOOP,
                     'Longest loop used as a pre-filter.')
flags.DEFINE_string('left_offsets', None,
                    'Only scan these left-rotor offsets, given as letters.')
flags.DEFINE_bool('progress', False, 'Show a progress bar.')
flags.DEFINE_bool('slide_rings', False,
                  'Also recover ring settings for each candidate.')

# Bayes and pipeline.
flags.DEFINE_string('flips', None, 'Coin flips, a string of H and T.')
flags.DEFINE_float('prior', 0.5, 'Prior probability that the coin is fair.')
flags.DEFINE_integer('days', 1, 'Days run by `pipeline run`.')

Command = Callable[[], List[str]]


def _required(name: str) -> str:
  value = FLAGS[name].value
  if value is None:
    raise app.UsageError(f'`--{name}` is required.', exitcode=2)
  return value


def _catalogue() -> catalogue_lib.Catalogue:
  return catalogue_lib.resolve_catalogue(FLAGS.catalogue)


def _rotor_names() -> Optional[Tuple[str, ...]]:
  return tuple(FLAGS.rotor_names) if FLAGS.rotor_names else None


def _seed() -> int:
  return seeding.resolve_seed(FLAGS.seed)


def _score_config() -> banburismus.ScoreConfig:
  return banburismus.ScoreConfig(use_bonus=FLAGS.use_bonus,
                                 use_malus=FLAGS.use_malus,
                                 min_overlap=FLAGS.min_overlap)


def _traffic_model() -> traffic.TrafficModel:
  return traffic.TrafficModel(table_path=FLAGS.frequency_table,
                              corpus_path=FLAGS.plaintext_corpus)


def _bombe_config(alphabet: alphabet_lib.Alphabet) -> bombe.BombeConfig:
  left_offsets = None
  if FLAGS.left_offsets:
    left_offsets = tuple(int(i) for i in alphabet.encode(FLAGS.left_offsets))
  return bombe.BombeConfig(test_register=FLAGS.test_register,
                           diagonal=FLAGS.diagonal,
                           max_loop=FLAGS.max_loop,
                           left_offsets=left_offsets,
                           jobs=FLAGS.jobs,
                           progress=FLAGS.progress)


def _substitution(alphabet: alphabet_lib.Alphabet) -> ciphers.SubstitutionKey:
  if FLAGS.cipher == 'caesar':
    shift = _required('key')
    try:
      return ciphers.caesar_key(int(shift), alphabet)
    except ValueError:
      raise ValueError(
          f'A Caesar key is a shift, got `{shift}`.') from None
  if FLAGS.cipher == 'atbash':
    return ciphers.atbash_key(alphabet)
  return ciphers.albam_key(alphabet)


def _classical(decipher: bool) -> List[str]:
  alphabet = alphabet_lib.LATIN
  text = alphabet.normalize(_required('text'))
  if FLAGS.cipher == 'scytale':
    width = _required('width')
    if decipher:
      return [ciphers.scytale_decipher(text, width)]
    return [ciphers.scytale_encipher(text, width)]
  if FLAGS.cipher == 'vigenere':
    key = alphabet.normalize(_required('key'))
    if decipher:
      return [ciphers.vigenere_decipher(text, key, alphabet)]
    return [ciphers.vigenere_encipher(text, key, alphabet)]
  key = _substitution(alphabet)
  if decipher:
    return [ciphers.mono_decipher(text, key)]
  return [ciphers.mono_encipher(text, key)]


def classical_encipher() -> List[str]:
  return _classical(decipher=False)


def classical_decipher() -> List[str]:
  return _classical(decipher=True)


def classical_freq() -> List[str]:
  text = _required('text')
  table = frequency.letter_frequencies(text)
  lines = ['# letter\tfrequency']
  lines += [f'{letter}\t{value:.6f}'
            for letter, value in sorted(table.entries.items())]
  lines.append(f'ioc\t{frequency.index_of_coincidence(text):.6f}')
  return lines


def classical_kasiski() -> List[str]:
  text = alphabet_lib.LATIN.normalize(_required('text'))
  lines = ['# key_length\tvotes']
  lines += [f'{length}\t{votes}' for length, votes in
            kasiski.kasiski_candidates(text, FLAGS.min_ngram)]
  return lines


def _enigma() -> List[str]:
  catalogue = _catalogue()
  daily = keysheet.load_keysheet(_required('day'), catalogue)
  state = daily.machine(catalogue, positions=FLAGS.positions)
  text = catalogue.alphabet.normalize(_required('text'))
  output, _ = machine.encipher_message(state, text)
  return [output]


def enigma_keyspace() -> List[str]:
  catalogue = _catalogue()
  names = _rotor_names() or catalogue.rotor_names
  model = keyspace.MachineModel(available_rotors=len(names),
                                plug_pairs=FLAGS.num_plugs,
                                alphabet_size=catalogue.alphabet.size)
  orders = keyspace.rotor_orders(names, model.chosen_rotors)
  pairings = keyspace.plugboard_pairings(model.alphabet_size,
                                         model.plug_pairs)
  size = keyspace.keyspace_size(model)
  return [
      f'rotor_orders\t{len(orders)}',
      f'plugboard_pairings\t{pairings}',
      f'keyspace\t{size}',
      f'keyspace_approx\t{size:.4e}',
  ]


def traffic_generate() -> List[str]:
  """Writes a day of intercepts and, with `--key_out`, its daily key."""
  catalogue = _catalogue()
  seed = _seed()
  if FLAGS.day:
    daily = keysheet.load_keysheet(FLAGS.day, catalogue)
  else:
    daily = keysheet.random_daily_key(
        seeding.stream(seed, 'daily_key'), catalogue, FLAGS.num_plugs,
        _rotor_names())
  crib = None
  if FLAGS.crib_text:
    crib = traffic.CribPlan(catalogue.alphabet.normalize(FLAGS.crib_text),
                            anchor=FLAGS.crib_anchor)
  intercepts = traffic.generate_day_traffic(
      daily, _traffic_model(), FLAGS.num_messages, seed, catalogue, crib,
      FLAGS.doubled)
  if FLAGS.key_out:
    keysheet.store_keysheet(daily, FLAGS.key_out)
  return corpus.serialize_corpus(intercepts)


def banburismus_score() -> List[str]:
  catalogue = _catalogue()
  intercepts = corpus.load_corpus(_required('corpus'), catalogue.alphabet)
  rows = evidence.score_corpus(intercepts, _score_config(), FLAGS.jobs)
  return evidence.serialize_evidence(rows)


def scritchmus_deduce() -> List[str]:
  """Deduces a rotor shortlist; the output is a valid `--orders` file."""
  catalogue = _catalogue()
  deductions = evidence.load_deductions(
      _required('evidence'),
      evidence.DeductionConfig(threshold=FLAGS.threshold, margin=FLAGS.margin))
  result = scritchmus.deduce(
      deductions, catalogue,
      scritchmus.ScritchmusConfig(min_weight=FLAGS.min_weight),
      _rotor_names())
  lines = [f'# {len(deductions)} deductions, {result.rounds} rounds']
  lines += [f'chain\t{c}' for c in result.chains]
  lines += [f'alphabet\t{c.hypothesis.to_letters(catalogue.alphabet)}'
            for c in result.candidates]
  lines += [f'dropped\t{d}' for d in result.dropped]
  lines.append(f'shortlist\t{" ".join(result.shortlist)}')
  lines.append(f'fallback\t{"yes" if result.fallback else "no"}')
  return lines


def bombe_run() -> List[str]:
  """Scans rotor orders against a crib file."""
  catalogue = _catalogue()
  crib = crib_graph.load_crib(_required('crib'), catalogue.alphabet)
  if FLAGS.orders:
    orders = bombe.load_orders(FLAGS.orders, catalogue, _rotor_names())
  else:
    orders = keyspace.rotor_orders(_rotor_names() or catalogue.rotor_names,
                                   machine.NUM_ROTORS)
  candidates = bombe.bombe_search(crib, orders, catalogue,
                                  _bombe_config(catalogue.alphabet),
                                  checkpoint=FLAGS.checkpoint)
  lines = ['# order\toffsets\tmiddle_step\thypotheses\tstecker']
  lines += [str(c) for c in candidates]
  if FLAGS.slide_rings:
    for candidate in candidates:
      order = ' '.join(candidate.order)
      lines += [f'rings\t{order}\t{r.ringstellung}\t{r.crib_start}\t'
                f'{r.message_key}'
                for r in bombe.slide_rings(candidate, crib, catalogue)]
  logging.info('%d candidates from %d orders.', len(candidates), len(orders))
  return lines


def bayes_coin() -> List[str]:
  flips = _required('flips').strip().upper()
  trajectory = bayes.coin_trajectory(flips, FLAGS.prior)
  lines = ['# flips\tp_fair', f'-\t{trajectory[0]:.6g}']
  lines += [f'{flips[:i + 1]}\t{p:.6g}'
            for i, p in enumerate(trajectory[1:])]
  return lines


def pipeline_run() -> List[str]:
  """Runs the whole attack on `--days` synthetic days."""
  config = pipeline.PipelineConfig(
      catalogue=FLAGS.catalogue,
      rotor_names=_rotor_names(),
      num_messages=FLAGS.num_messages,
      num_plugs=FLAGS.num_plugs,
      traffic=_traffic_model(),
      crib=FLAGS.crib_text or pipeline.DEFAULT_CRIB,
      crib_anchor=FLAGS.crib_anchor,
      score=_score_config(),
      deduction=evidence.DeductionConfig(threshold=FLAGS.threshold,
                                         margin=FLAGS.margin),
      scritchmus=scritchmus.ScritchmusConfig(min_weight=FLAGS.min_weight),
      bombe=_bombe_config(_catalogue().alphabet),
      jobs=FLAGS.jobs)
  seed = _seed()
  if FLAGS.days == 1:
    return pipeline.run_pipeline(config, seed).to_text()
  return pipeline.summarize(pipeline.run_days(config, seed, FLAGS.days))


COMMANDS: Dict[Tuple[str, str], Command] = {
    ('classical', 'encipher'): classical_encipher,
    ('classical', 'decipher'): classical_decipher,
    ('classical', 'freq'): classical_freq,
    ('classical', 'kasiski'): classical_kasiski,
    ('enigma', 'encipher'): _enigma,
    ('enigma', 'decipher'): _enigma,
    ('enigma', 'keyspace'): enigma_keyspace,
    ('traffic', 'generate'): traffic_generate,
    ('banburismus', 'score'): banburismus_score,
    ('scritchmus', 'deduce'): scritchmus_deduce,
    ('bombe', 'run'): bombe_run,
    ('bayes', 'coin'): bayes_coin,
    ('pipeline', 'run'): pipeline_run,
}


def _usage() -> str:
  return ', '.join(' '.join(name) for name in COMMANDS)


def run_command(args: Sequence[str],
                out: Optional[TextIO] = None,
                err: Optional[TextIO] = None) -> int:
  """Runs `<group> <command>` with the parsed flags.

  Args:
    args: the positional arguments, without the program name.
    out: where tables go when `--out` is `-`; default standard output.
    err: where the error line goes; default standard error.

  Returns:
    The exit status: 0 on success, 1 on a failed command.

  Raises:
    UsageError: for an unknown command or a missing required flag.
  """
  if len(args) != 2 or tuple(args) not in COMMANDS:
    raise app.UsageError(
        f'Unknown command `{" ".join(args)}`; expected one of: {_usage()}.',
        exitcode=2)
  command = COMMANDS[tuple(args)]
  try:
    lines = command()
    if FLAGS.out == '-':
      out = out or sys.stdout
      for line in lines:
        out.write(line + '\n')
    else:
      records.write_lines(FLAGS.out, lines)
  except (ValueError, OSError) as e:
    logging.vlog(1, 'Command %s failed.', ' '.join(args), exc_info=True)
    print(f'error: {e}', file=err or sys.stderr)
    return 1
  return 0


def main(argv: Sequence[str]) -> int:
  return run_command(argv[1:])


def run():
  app.run(main)


if __name__ == '__main__':
  run()
