"""Completion of (simple) multi-Latin rectangles to multi-Latin squares."""
from .admissibility import (NotAdmissible, Witness, check_admissible, necessary_quick_check,
                            recheck_conditions)
from .completion import RaggedSquare, build_step1, complete, split_last_col, split_last_row
from .corollaries import (Rejected, cyclic_simple_square, evans_embed, exists_square,
                          hall_check, simple_ryser_check)
from .factors import (BipartiteMultigraph, DegreeSpec, FlowNetwork, LaminarInstance, f_factor,
                      feasible_flow, laminar_round, max_flow, ore_condition_holds)
from .model import (Instance, InternalError, PartialInstance, Square, ValidationReport,
                    symbol_counts, validate, verify_square)

__version__ = "0.1.0"
