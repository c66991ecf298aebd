"""Stabilizer codes over finite local Frobenius rings."""

__version__ = "0.1.0"

from frobstab.ring import LocalRing, build_ring, verify_frobenius  # noqa: E402
from frobstab.code import Code, standard_form, dual_standard_form  # noqa: E402
from frobstab.metrics import min_distance, relative_distance  # noqa: E402
from frobstab.reduction import colon_module, distance_chain_report, reduce_code  # noqa: E402
from frobstab.pauli import PauliElement, stabilizer_lift  # noqa: E402

__all__ = ["LocalRing", "build_ring", "verify_frobenius", "Code", "standard_form",
           "dual_standard_form", "min_distance", "relative_distance", "colon_module",
           "distance_chain_report", "reduce_code", "PauliElement", "stabilizer_lift"]
