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
"""Bayes' theorem in probability, odds and deciban form.

Evidence `B` bearing on a hypothesis `A` is summarized by its two likelihoods
`P(B|A)` and `P(B|not A)`. Their ratio is the Bayes-Turing factor; it
multiplies the odds on `A`, and its logarithm in decibans adds to the weight
of evidence.
"""

from typing import Iterable, List, Sequence, Tuple

from banbury._src.utils import errors
from banbury._src.utils import math
import chex
import jax
import jax.numpy as jnp
import numpy as np

Array = chex.Array
Numeric = chex.Numeric

# Beyond this many decibans, odds overflow float32.
LOG_SPACE_THRESHOLD = 300.

# Fair coin against a two-headed coin: (P(flip | fair), P(flip | two-headed)).
COIN_LIKELIHOODS = {'H': (0.5, 1.), 'T': (0.5, 0.)}


def _is_concrete(*values) -> bool:
  return not any(isinstance(v, jax.core.Tracer) for v in values)


def _check_probability(name: str, value: Array) -> None:
  if _is_concrete(value):
    value = np.asarray(value)
    if np.any((value < 0.) | (value > 1.)):
      raise ValueError(f'`{name}` must lie in [0, 1], got {value}.')


def posterior(prior: Numeric,
              likelihood_true: Numeric,
              likelihood_false: Numeric) -> Array:
  """Returns `P(A|B)` from `P(A)`, `P(B|A)` and `P(B|not A)`.

  Args:
    prior: the probability of the hypothesis before the evidence.
    likelihood_true: the probability of the evidence if the hypothesis holds.
    likelihood_false: the probability of the evidence if it does not.

  Returns:
    The posterior probability.

  Raises:
    ImpossibleEvidenceError: if the evidence has probability zero, so that
      the posterior is undefined. Not checked under `jax.jit`.
  """
  prior = jnp.asarray(prior)
  likelihood_true = jnp.asarray(likelihood_true)
  likelihood_false = jnp.asarray(likelihood_false)
  for name, value in (('prior', prior), ('likelihood_true', likelihood_true),
                      ('likelihood_false', likelihood_false)):
    _check_probability(name, value)
  joint = likelihood_true * prior
  evidence = joint + likelihood_false * (1. - prior)
  if _is_concrete(evidence) and np.any(np.asarray(evidence) == 0.):
    raise errors.ImpossibleEvidenceError(
        'impossible evidence: the observation has probability zero under '
        'both hypotheses.')
  return joint / evidence


def sequential_update(prior: Numeric,
                      evidence: Iterable[Tuple[Numeric, Numeric]]) -> Array:
  """Applies `posterior` once per `(likelihood_true, likelihood_false)`."""
  probability = jnp.asarray(prior)
  for likelihood_true, likelihood_false in evidence:
    probability = posterior(probability, likelihood_true, likelihood_false)
  return probability


def probability_to_odds(probability: Numeric) -> Array:
  """Returns `p / (1 - p)`, which is infinite for `p = 1`."""
  probability = jnp.asarray(probability)
  _check_probability('probability', probability)
  safe = jnp.where(probability == 1., 0.5, probability)
  return jnp.where(probability == 1., jnp.inf, safe / (1. - safe))


def odds_to_probability(odds: Numeric) -> Array:
  """Returns `o / (1 + o)`, which is 1 for infinite odds."""
  odds = jnp.asarray(odds)
  safe = jnp.where(jnp.isinf(odds), 1., odds)
  return jnp.where(jnp.isinf(odds), 1., safe / (1. + safe))


def odds_update(odds: Numeric, bayes_factor: Numeric) -> Array:
  """Multiplies prior odds by a Bayes-Turing factor."""
  return jnp.asarray(odds) * jnp.asarray(bayes_factor)


def bayes_factor(likelihood_true: Numeric, likelihood_false: Numeric) -> Array:
  return jnp.asarray(likelihood_true) / jnp.asarray(likelihood_false)


def factor_to_decibans(factor: Numeric) -> Array:
  """Returns `10 log10(factor)`."""
  return math.decibans_from_log(jnp.log(jnp.asarray(factor)))


def decibans_to_factor(weight: Numeric) -> Array:
  return jnp.exp(math.log_from_decibans(weight))


def accumulate_decibans(prior: Numeric, weights: Sequence[Numeric]) -> Array:
  """Adds weights of evidence to the prior log-odds and returns a probability.

  Sums are formed in decibans. When the total exceeds `LOG_SPACE_THRESHOLD`
  in magnitude, the probability is taken from the logistic function of the
  log-odds rather than from the overflowing odds.

  Args:
    prior: the prior probability, strictly between 0 and 1.
    weights: decibans of independent pieces of evidence.

  Returns:
    The posterior probability.
  """
  total = factor_to_decibans(probability_to_odds(prior))
  total = total + jnp.sum(jnp.asarray(weights, dtype=total.dtype))
  in_log_space = jnp.abs(total) > LOG_SPACE_THRESHOLD
  clipped = jnp.clip(total, -LOG_SPACE_THRESHOLD, LOG_SPACE_THRESHOLD)
  linear = odds_to_probability(decibans_to_factor(clipped))
  logistic = jax.nn.sigmoid(math.log_from_decibans(total))
  return jnp.where(in_log_space, logistic, linear)


def coin_trajectory(flips: str, prior: float = 0.5) -> List[float]:
  """Posterior that a coin is fair rather than two-headed, flip by flip.

  Args:
    flips: a string of `H` and `T`.
    prior: the initial probability that the coin is fair.

  Returns:
    The prior followed by the posterior after each flip. A single tail proves
    the coin fair.
  """
  unknown = set(flips) - set(COIN_LIKELIHOODS)
  if unknown:
    raise ValueError(
        f'`flips` must consist of H and T, got {"".join(sorted(unknown))}.')
  trajectory = [float(prior)]
  probability = jnp.asarray(prior)
  for flip in flips:
    probability = posterior(probability, *COIN_LIKELIHOODS[flip])
    trajectory.append(float(probability))
  return trajectory
