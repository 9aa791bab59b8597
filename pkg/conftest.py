"""Pytest wiring: absl flags are normally parsed by `absltest.main()`."""

from absl import flags


def pytest_configure(config):
  del config
  flags.FLAGS.mark_as_parsed()
