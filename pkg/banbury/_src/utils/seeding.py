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
"""Named random streams derived from a single integer seed.

Every stage of the workbench draws randomness from `stream(seed, name)`, so a
stage can be re-run in isolation and still see the same numbers. Items inside
a stage (messages, trials) fold their index into the stage key.
"""

import os
from typing import Optional, Sequence, Union
import zlib

import chex
import jax
import numpy as np

Array = chex.Array
PRNGKey = chex.PRNGKey
IntLike = Union[int, np.int16, np.int32, np.int64]

SEED_ENV_VAR = 'BANBURY_SEED'


def _name_to_int(name: str) -> int:
  # Must not depend on PYTHONHASHSEED.
  return zlib.crc32(name.encode('utf-8')) & 0x7fffffff


def stream(seed: Union[IntLike, PRNGKey], name: str) -> PRNGKey:
  """Returns the key of the stream called `name`.

  Args:
    seed: an integer seed or a PRNG key.
    name: the stream name, e.g. `'traffic'`.

  Returns:
    A PRNG key that depends only on `seed` and `name`.
  """
  if isinstance(seed, (int, np.integer)):
    seed = jax.random.PRNGKey(seed)
  return jax.random.fold_in(seed, _name_to_int(name))


def item(key: PRNGKey, index: int) -> PRNGKey:
  """Returns the key of item `index` inside a stream."""
  if index < 0:
    raise ValueError(f'`index` must be non-negative, got {index}.')
  return jax.random.fold_in(key, index)


def split(key: PRNGKey, num: int = 2) -> PRNGKey:
  return jax.random.split(key, num)


def resolve_seed(seed: Optional[int]) -> int:
  """Returns the seed to use, letting `BANBURY_SEED` override `seed`."""
  override = os.environ.get(SEED_ENV_VAR)
  if override:
    try:
      return int(override)
    except ValueError:
      raise ValueError(
          f'`{SEED_ENV_VAR}` must be an integer, got `{override}`.') from None
  return 0 if seed is None else int(seed)


def categorical(key: PRNGKey, probs: Array, shape: Sequence[int]) -> np.ndarray:
  """Draws indices from a categorical distribution as a numpy int array."""
  probs = np.asarray(probs, dtype=np.float32)
  draws = jax.random.choice(key, probs.size, shape=tuple(shape), p=probs)
  return np.array(draws, dtype=np.int64)


def randint(key: PRNGKey, low: int, high: int,
            shape: Sequence[int] = ()) -> np.ndarray:
  """Draws integers uniformly from `[low, high)` as a numpy int array."""
  return np.array(
      jax.random.randint(key, tuple(shape), low, high), dtype=np.int64)


def uniform(key: PRNGKey, shape: Sequence[int] = ()) -> np.ndarray:
  return np.array(jax.random.uniform(key, tuple(shape)), dtype=np.float64)


def permutation(key: PRNGKey, n: int) -> np.ndarray:
  """Returns a uniformly random permutation of `0..n-1`."""
  return np.array(jax.random.permutation(key, n), dtype=np.int64)
