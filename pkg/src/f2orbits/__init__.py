"""Orbit censuses of transvection-style group actions on F2 triangular
matrix spaces, with exact closed-form predictions and the general
graph-driven transvection-group construction."""

from .f2la import (ArfClass, BilinearForm, F2Vector, QuadraticSpace,
                   SymplecticBasis, arf, form_eval, kernel_basis, q_eval,
                   symplectic_reduce, transvect, value_counts_brute,
                   value_counts_closed)
from .tri import (HexGraph, TriMatrix, TriShape, couple, hex_graph, pattern_E,
                  pattern_P, pattern_Ptilde, pattern_R, phi, phi_star, psi)
from .actions import (ActionKind, ActionSpec, Generator, apply, generators,
                      height_first, height_second, psi_height)
from .lattice import (DeltaClosure, Graph, LatticeSpec, NonspecialityUnknown,
                      VanishingReport, build, check_vanishing, contains_e6,
                      delta_closure, e6_graph, hex_lattice_graph,
                      parse_graph_file, predict_census_nonspecial)
from .orbits import (EnumerationGuardError, OrbitCensus, OrbitRecord,
                     enumerate_orbits, enumerate_stratum, orbit_of)
from .classify import (PredictedCensus, VerifyReport, epsilon, eta_bar, h_bar,
                       label_orbits, predict_first, predict_second, sharp,
                       verify)

__version__ = "0.1.0"
