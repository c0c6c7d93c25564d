"""Privacy-utility trade-offs of quantum and classical locally private
hypothesis tests: depolarised SIC-state mechanisms, block-design mechanisms,
Chernoff/relative-entropy exponents and the closed forms comparing them."""

from ._config import Tolerances, get_tolerances, override_tolerances, set_tolerances
from .divergences import (UtilityReport, classical_chernoff, classical_relative_entropy,
                          quantum_chernoff, quantum_relative_entropy, utility_a, utility_s)
from .errors import (CapabilityError, DomainError, NotPSDError, PreconditionError, PutlabError,
                     ValidationError)
from .hermitian import EigenSystem, eig, matrix_power, min_eigenvalue
from .mechanisms import (BlockDesign, CQMechanism, ExtremalMechanism, QldpBounds, block_design,
                         block_design_mechanism, complete_design, decompose_extremal,
                         extremal_matrix, mu_feasible_interval, proposed_mechanism,
                         randomized_response, verify_ldp, verify_qldp)
from .put import (PutCurvePoint, a_classical, a_quantum, corollary_ratio_limits, curve_sweep,
                  depolarized_overlap, s_classical_upper, s_quantum, vertex_divergence,
                  vertex_mean)
from .states import Hypothesis, depolarized_pure, ensemble_state, sic_states

__version__ = "0.1.0"
