"""Matroids presented by their lattice of cyclic flats, with modular cuts,
single-element extensions, amalgam search and property checkers."""

from .amalgam import (AmalgamProblem, BudgetExceeded, Certificate, CertificateFailure, has_amalgam,
                      verify_loop_argument, verify_nonsticky_planes)
from .axioms import AxiomViolation, check_z_axioms, is_valid, lattice_join, lattice_meet
from .constructions import build_n_ip, build_n_planes, counterexample_rank5, vamos
from .formats import (FormatError, matrix_from_json, matrix_to_json, matroid_from_json, matroid_to_json,
                      presentation_from_json, presentation_to_json)
from .kernel import (CyclicFlatPresentation, ElementSet, GroundSet, InvalidPresentation, Matroid, MatroidError,
                     UsageError, circuits, closure, contraction, cyclic_flats_from_oracle, deletion, flats_of_rank,
                     free_matroid, hyperplanes, is_cyclic, is_independent, lines, planes, rank_of, restriction,
                     uniform)
from .linear import ExactMatrix, column_matroid, counterexample_matrix, projective_geometry, verify_counterexample
from .modcuts import (ForcingStep, ModularCut, build_m_p, extend, forced_closure, free_extension,
                      is_modular_cut, is_modular_matroid, is_modular_pair, make_cyclic, modular_cuts,
                      principal_cut, principal_extension)
from .properties import (LSet, LineQuadruple, bundle_condition_holds, bundle_counterexample,
                         intersection_property_holds, intersection_property_witness, l_construction)
from .report import Report

__all__ = [
    "AmalgamProblem", "AxiomViolation", "BudgetExceeded", "Certificate", "CertificateFailure",
    "CyclicFlatPresentation", "ElementSet", "ExactMatrix", "ForcingStep", "FormatError",
    "GroundSet", "InvalidPresentation", "LSet", "LineQuadruple", "Matroid", "MatroidError",
    "ModularCut", "Report", "UsageError", "build_m_p", "build_n_ip", "build_n_planes",
    "bundle_condition_holds", "bundle_counterexample", "check_z_axioms", "circuits", "closure",
    "column_matroid", "contraction", "counterexample_matrix", "counterexample_rank5",
    "cyclic_flats_from_oracle", "deletion", "extend", "flats_of_rank", "forced_closure",
    "free_extension", "free_matroid", "has_amalgam", "hyperplanes", "intersection_property_holds",
    "intersection_property_witness", "is_cyclic", "is_independent", "is_modular_cut",
    "is_modular_matroid", "is_modular_pair", "is_valid", "l_construction", "lattice_join",
    "lattice_meet", "lines", "make_cyclic", "matrix_from_json", "matrix_to_json",
    "matroid_from_json", "matroid_to_json", "modular_cuts", "planes", "presentation_from_json",
    "presentation_to_json", "principal_cut", "principal_extension", "projective_geometry",
    "rank_of", "restriction", "uniform", "vamos", "verify_counterexample", "verify_loop_argument",
    "verify_nonsticky_planes",
]
