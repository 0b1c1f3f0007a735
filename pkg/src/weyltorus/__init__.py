"""Birational Weyl group actions on point configurations in P^n, realized two
ways: exactly on the blow-up Picard lattice, and numerically as Cremona maps
on configurations of points lying on an embedded elliptic curve.  The verify
module checks that the two agree up to a projective map, with the residual
translation predicted by torus arithmetic.
"""
from .errors import DegenerateConfigError, DomainError, PoleError, SolveError
from .lattice import (ActionMatrix, CurveClass, DivisorClass, Signature,
                      anticanonical_curve, b_rows, coroot, dynkin_adjacency,
                      exceptional, hyperplane, is_real_root_orbit_member,
                      pairing, parse_class, parse_word, real_root_orbit,
                      reflect_curve, reflect_divisor, root, word_pullback,
                      word_pushforward)
from .configuration import (GenericityReport, PointConfig, ProjectiveMap,
                            apply_word, cremona, genericity_check,
                            normalize_frame, projective_residual, solve_pgl,
                            swap)
from .elliptic import (EllipticEmbedding, TorusModulus, lattice_dist,
                       log_theta, reduce_mod_lattice, section_zero_data,
                       theta, theta_d, torus_eq, translation_between, wp)
from .torus_action import (TorusParams, predict_points, predict_word, shift_s,
                           step_with_shift, theta_ratio_step, theta_ratio_word,
                           weierstrass_step, weierstrass_word, word_with_shifts)
from .verify import (DecompositionReport, TranslationReport,
                     VerificationReport, verify_g_decomposition,
                     verify_prop32, verify_word)

__version__ = "0.1.0"
