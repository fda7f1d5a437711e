"""Sparse structured generalized inverses of low-rank matrices.

Block constructions (symmetric and column block solutions), exact 1-norm
minimization by linear programming, and dual certificates of optimality.
"""
__version__ = "0.1.0"

from .blocks import GinvSolution, column_block, symmetric_block
from .certify import (ConditionReport, DualCertificate, cert_rank1_ah, cert_rank1_symmetric,
                      cert_rank2_symmetric_nonneg, check_rank2_ah_conditions, solve_wu_certificate,
                      verify_certificate)
from .errors import GinvError
from .linalg import (RankFactorization, as_matrix, invert_small, max_norm, one_norm,
                     pinv_full_col_rank, rank_factorize)
from .lp import LinearProgram, LPSolution, LPStatus, solve
from .mpcheck import MPReport, check_mp, is_ah_symmetric, is_generalized_inverse
from .normmin import MinNormResult, min_norm_p1, min_norm_p1_p3, min_norm_p1_symmetric
from .search import (Certification, Outcome, SearchResult, best_column_block, best_symmetric_block,
                     certify_block_optimality)
