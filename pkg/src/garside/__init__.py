"""Garside normal forms, conjugacy invariants and round-curve tests for Artin braid groups."""

from .braid import (
    BraidError,
    BraidWord,
    NormalForm,
    PermutationBraid,
    complement,
    conjugate,
    delta,
    finishing_set,
    inverse,
    is_simple,
    left_weighted,
    meet,
    mul,
    normal_form,
    power,
    prefix_le,
    starting_set,
    tau,
)
from .conjugacy import (
    ConjugacySet,
    Kind,
    OrbitSet,
    ResourceLimitError,
    cycling,
    cyclic_sliding,
    decycling,
    enumerate_set,
    final_factor,
    initial_factor,
    is_rigid,
    orbit_closure,
    preferred_prefix,
    send_to_sc,
    send_to_sss,
    transport,
    verify_single_orbit_certificate,
)
from .curves import CyclicClass, RoundCurve, all_round_curves, artin_apply, bgn_scan, image_of_round, round_of_class
from .classify import NTVerdict, Verdict, classify_nt, is_periodic
from .family import beta, psi, psi_variant, sss_witnesses, tau_conjugator, verify_paper

__version__ = "0.1.0"
