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
"""Utility math functions."""

import math

import chex
import jax.numpy as jnp
import numpy as np

Array = chex.Array
Numeric = chex.Numeric

# Decibans per natural-log unit: 10 / ln(10).
DECIBANS_PER_NAT = 10. / math.log(10.)


def decibans_from_log(log_factor: Numeric) -> Array:
  """Converts a natural-log factor to decibans, `10 log10(exp(x))`."""
  return jnp.asarray(log_factor) * DECIBANS_PER_NAT


def log_from_decibans(weight: Numeric) -> Array:
  """Converts decibans to a natural-log factor."""
  return jnp.asarray(weight) / DECIBANS_PER_NAT


def xlogy_no_nan(x: Numeric, y: Numeric) -> Array:
  """Computes `x * log(y)` and returns 0 where `x` is zero, even if `y` is 0."""
  x = jnp.asarray(x)
  y = jnp.asarray(y)
  dtype = jnp.result_type(x, y, jnp.float32)
  safe_y = jnp.where(x == 0, jnp.ones((), dtype=dtype), y)
  return jnp.where(x == 0, jnp.zeros((), dtype=dtype), x * jnp.log(safe_y))


def normalize(probs: Array) -> np.ndarray:
  """Normalizes non-negative weights along the last axis to sum to one."""
  probs = np.asarray(probs, dtype=np.float64)
  if np.any(probs < 0):
    raise ValueError('Probabilities must be non-negative.')
  total = probs.sum(axis=-1, keepdims=True)
  if np.any(total <= 0):
    raise ValueError('Cannot normalize weights that sum to zero.')
  return probs / total


def mix_to_coincidence(probs: Array, target: float) -> np.ndarray:
  """Mixes a distribution so that `sum(p**2)` equals `target`.

  Below the rate `r = sum(q**2)` of `q`, the mixture is with uniform:
  `p = lam * q + (1 - lam) / n` has rate `lam**2 * r + (1 - lam**2) / n`, which
  gives `lam` in closed form. Above it, the mixture is with the indicator `e`
  of the most frequent letter: `p = (1 - mu) * q + mu * e` has rate
  `r + 2 mu (q_max - r) + mu**2 sum((q - e)**2)`, increasing in `mu` up to 1
  at `mu = 1`.

  Args:
    probs: a probability vector `q` over `n` letters.
    target: the desired coincidence rate, in `[1/n, 1]`.

  Returns:
    The mixed probability vector.
  """
  q = normalize(probs)
  n = q.size
  rate = float(np.sum(q**2))
  uniform = 1. / n
  if not uniform <= target <= 1.:
    raise ValueError(
        f'`target` must lie in [{uniform:.6f}, 1], got {target}.')
  if target <= rate:
    if rate - uniform < 1e-15:
      return q
    lam = math.sqrt((target - uniform) / (rate - uniform))
    return lam * q + (1. - lam) * uniform
  peak = np.zeros(n)
  peak[np.argmax(q)] = 1.
  a = float(np.sum((q - peak)**2))
  b = 2. * (float(q.max()) - rate)
  if a < 1e-15:
    return q
  mu = (-b + math.sqrt(b * b + 4. * a * (target - rate))) / (2. * a)
  mu = min(mu, 1.)
  return (1. - mu) * q + mu * peak
