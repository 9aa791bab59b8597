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
"""Banbury: Enigma-era cryptanalysis in Python."""

# Classical ciphers.
from banbury._src.classical.ciphers import albam_key
from banbury._src.classical.ciphers import atbash_key
from banbury._src.classical.ciphers import caesar_key
from banbury._src.classical.ciphers import mono_decipher
from banbury._src.classical.ciphers import mono_encipher
from banbury._src.classical.ciphers import scytale_decipher
from banbury._src.classical.ciphers import scytale_encipher
from banbury._src.classical.ciphers import SubstitutionKey
from banbury._src.classical.ciphers import vigenere_decipher
from banbury._src.classical.ciphers import vigenere_encipher
from banbury._src.classical.frequency import FrequencyTable
from banbury._src.classical.frequency import index_of_coincidence
from banbury._src.classical.frequency import letter_frequencies
from banbury._src.classical.frequency import load_frequency_table
from banbury._src.classical.kasiski import kasiski_candidates
from banbury._src.classical.kasiski import repeated_ngrams

# Machine.
from banbury._src.enigma.catalogue import builtin_catalogue
from banbury._src.enigma.catalogue import Catalogue
from banbury._src.enigma.catalogue import load_catalogue
from banbury._src.enigma.catalogue import resolve_catalogue
from banbury._src.enigma.components import Plugboard
from banbury._src.enigma.components import ReflectorSpec
from banbury._src.enigma.components import RotorSpec
from banbury._src.enigma.keyspace import keyspace_size
from banbury._src.enigma.keyspace import MachineModel
from banbury._src.enigma.keyspace import plugboard_pairings
from banbury._src.enigma.keyspace import rotor_orders
from banbury._src.enigma.machine import encipher_letter
from banbury._src.enigma.machine import encipher_message
from banbury._src.enigma.machine import MachineState
from banbury._src.enigma.machine import positions_after
from banbury._src.enigma.machine import step

# Key sheets and traffic.
from banbury._src.protocol.corpus import load_corpus
from banbury._src.protocol.corpus import store_corpus
from banbury._src.protocol.indicator import Intercept
from banbury._src.protocol.indicator import message_key_of
from banbury._src.protocol.indicator import receive
from banbury._src.protocol.indicator import transmit
from banbury._src.protocol.keysheet import DailyKey
from banbury._src.protocol.keysheet import load_keysheet
from banbury._src.protocol.keysheet import random_daily_key
from banbury._src.protocol.keysheet import store_keysheet
from banbury._src.protocol.traffic import CribPlan
from banbury._src.protocol.traffic import generate_day_traffic
from banbury._src.protocol.traffic import TrafficModel

# Attacks.
from banbury._src.attacks.banburismus import count_matches
from banbury._src.attacks.banburismus import rank_shifts
from banbury._src.attacks.banburismus import ScoreConfig
from banbury._src.attacks.banburismus import weight_of_evidence
from banbury._src.attacks.bombe import bombe_search
from banbury._src.attacks.bombe import bombe_test
from banbury._src.attacks.bombe import BombeCandidate
from banbury._src.attacks.bombe import BombeConfig
from banbury._src.attacks.bombe import slide_rings
from banbury._src.attacks.bombe import SteckerHypothesis
from banbury._src.attacks.crib_graph import build_crib_graph
from banbury._src.attacks.crib_graph import Crib
from banbury._src.attacks.crib_graph import find_loops
from banbury._src.attacks.evidence import aggregate_deductions
from banbury._src.attacks.evidence import score_corpus
from banbury._src.attacks.scritchmus import AlphabetHypothesis
from banbury._src.attacks.scritchmus import build_chains
from banbury._src.attacks.scritchmus import Chain
from banbury._src.attacks.scritchmus import Deduction
from banbury._src.attacks.scritchmus import deduce
from banbury._src.attacks.scritchmus import enumerate_alphabets
from banbury._src.attacks.scritchmus import placements

# Inference.
from banbury._src.inference.bayes import accumulate_decibans
from banbury._src.inference.bayes import bayes_factor
from banbury._src.inference.bayes import coin_trajectory
from banbury._src.inference.bayes import posterior

# Pipeline.
from banbury._src.pipeline.pipeline import PipelineConfig
from banbury._src.pipeline.pipeline import PipelineReport
from banbury._src.pipeline.pipeline import run_pipeline

# Utilities.
from banbury._src.utils.alphabet import Alphabet
from banbury._src.utils.errors import BanburyError
from banbury._src.utils.errors import RecordError
from banbury._src.utils.errors import StageError
from banbury._src.utils.permutation import Permutation

__version__ = "0.1.0"

__all__ = (
    "accumulate_decibans",
    "aggregate_deductions",
    "albam_key",
    "Alphabet",
    "AlphabetHypothesis",
    "atbash_key",
    "BanburyError",
    "bayes_factor",
    "bombe_search",
    "bombe_test",
    "BombeCandidate",
    "BombeConfig",
    "build_chains",
    "build_crib_graph",
    "builtin_catalogue",
    "caesar_key",
    "Catalogue",
    "Chain",
    "coin_trajectory",
    "count_matches",
    "Crib",
    "CribPlan",
    "DailyKey",
    "deduce",
    "Deduction",
    "encipher_letter",
    "encipher_message",
    "enumerate_alphabets",
    "find_loops",
    "FrequencyTable",
    "generate_day_traffic",
    "index_of_coincidence",
    "Intercept",
    "kasiski_candidates",
    "keyspace_size",
    "letter_frequencies",
    "load_catalogue",
    "load_corpus",
    "load_frequency_table",
    "load_keysheet",
    "MachineModel",
    "MachineState",
    "message_key_of",
    "mono_decipher",
    "mono_encipher",
    "Permutation",
    "PipelineConfig",
    "PipelineReport",
    "placements",
    "Plugboard",
    "plugboard_pairings",
    "positions_after",
    "posterior",
    "random_daily_key",
    "rank_shifts",
    "receive",
    "RecordError",
    "ReflectorSpec",
    "repeated_ngrams",
    "resolve_catalogue",
    "rotor_orders",
    "RotorSpec",
    "run_pipeline",
    "score_corpus",
    "ScoreConfig",
    "scytale_decipher",
    "scytale_encipher",
    "slide_rings",
    "StageError",
    "SteckerHypothesis",
    "step",
    "store_corpus",
    "store_keysheet",
    "SubstitutionKey",
    "TrafficModel",
    "transmit",
    "vigenere_decipher",
    "vigenere_encipher",
    "weight_of_evidence",
)


#  _________________________________________
# / Please don't use symbols in `_src` they \
# \ are not part of the Banbury public API. /
#  -----------------------------------------
#         \   ^__^
#          \  (oo)\_______
#             (__)\       )\/\
#                 ||----w |
#                 ||     ||
#
