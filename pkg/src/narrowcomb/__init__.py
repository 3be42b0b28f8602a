"""Normal forms, word metrics, combings and van Kampen diagrams for the groups G_q."""

from .analysis import (FuzzReport, LowerBound, SurveyRow, invariance_fuzz, lower_bound_check,
                       rows_to_csv, survey)
from .combing import (CombingPath, check_narrow_shape, combing_distance, combing_line, delta,
                      path_point)
from .diagram import (DepthExceeded, NotTrivial, VanKampenDiagram, area, build_diagram, diameter,
                      isodiametric_bound, isoperimetric_bound, max_depth, validate_diagram)
from .group import (IDENTITY, GroupParams, NormalForm, RewriteTrace, heisenberg_matrix,
                    nf_identity, nf_inverse, nf_mul, nf_mul_gen, nf_to_word, normalize,
                    normalize_traced, params_for)
from .metric import (Ball, BallBudgetExceeded, OutOfBall, build_ball, check_geodesic_two_sided,
                     check_recursive, dist, geodesic_word)
from .words import (GENERATORS, PAUSE, X, Y, Z, commutator, cyclic_reduce, format_word,
                    free_reduce, inverse_word, parse_word, word_w_n)

__version__ = "0.1.0"
