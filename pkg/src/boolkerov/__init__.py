"""Exact observables of Young diagrams and the change of basis between
normalized symmetric-group characters and Boolean cumulants, computed two
independent ways: exact linear algebra over evaluations, and diagrammatic
rewriting in the center of a graphical Heisenberg algebra."""

from .combinatorics import (CycleType, Partition, Permutation, cycle_type,
                            conjugacy_class_size, enumerate_partitions,
                            reflection_length)
from .exactmath import (GradedPolynomial, Rational, RationalMatrix, UniPoly,
                        apply_iota, series_expand_at_infinity, solve_exact)
from .observables import (ObservableVector, Profile, TransitionMeasure,
                          boolean_cumulants, free_cumulants, mn_character,
                          moment_cumulant_check, moments, normalized_character,
                          profile_coordinates, transition_measure,
                          twisted_boolean_cumulants)
from .basischange import (MonomialBasis, boolean_in_characters,
                          boolean_kerov_polynomial, verify_theorems)
from .heiscalc import (CenterElement, DiagramState, PermDiagramExpansion,
                       aggregate_by_cycle_type, bubble_move_full,
                       bubble_move_step, evaluate_center, expand_dotted_strand,
                       reduce_alpha)

__version__ = "0.1.0"
