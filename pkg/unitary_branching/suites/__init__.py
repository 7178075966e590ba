"""Verification suites, keyed by the name used on the command line."""

from unitary_branching.suites.base import Claim, VerificationSuite
from unitary_branching.suites.branching_rules import BranchingSuite
from unitary_branching.suites.double_cosets import DoubleCosetSuite
from unitary_branching.suites.hensel import HenselSuite
from unitary_branching.suites.intertwining import IntertwiningSuite
from unitary_branching.suites.key_identification import KeyIdentificationSuite
from unitary_branching.suites.level_one import LevelOneSuite
from unitary_branching.suites.near_identity import NearIdentitySuite
from unitary_branching.suites.nilpotent_reps import NilpotentRepsSuite
from unitary_branching.suites.normalizers import NormalizerSuite
from unitary_branching.suites.orbits import OrbitSuite

SUITES = {
    suite.name: suite
    for suite in (
        LevelOneSuite,
        DoubleCosetSuite,
        IntertwiningSuite,
        NilpotentRepsSuite,
        BranchingSuite,
        NormalizerSuite,
        OrbitSuite,
        HenselSuite,
        KeyIdentificationSuite,
        NearIdentitySuite,
    )
}

__all__ = ['Claim', 'VerificationSuite', 'SUITES']
