"""Fuzzy alternating Büchi and co-Büchi automata over distributive lattices."""

from .automata import (Acceptance, AutomatonError, Branch, FuzzyABA, FuzzyNBA, LassoWord,
                       WeakPartition, branch_weight, is_weak, validate)
from .decision import Relation, Verdict, compare, e_val, imp_val, u_val
from .evaluation import (Bounds, BoundsExceeded, brute_force_eval_aba, eval_aba_game,
                         eval_aba_lasso, eval_nba_lasso)
from .formula import (FALSE, TRUE, TermCapExceeded, dual, equivalent, evaluate,
                      minimal_satisfaction_sets, parse, render, simplest_final_expansion,
                      standard_form, term_cap)
from .lattice import (BOOLEAN, RATIONAL_UNIT, Chain, Lattice, LatticeError, NegationUnavailable,
                      Product, finite_sublattice_closure, join_irreducibles, parse_lattice)
from .textformat import (AutomatonParseError, load_automaton, parse_automaton,
                         render_automaton, save_automaton)
from .transforms import (aba_to_nba, cobuchi_to_weak, crisp_final, crisp_initial, dualize, meet,
                         nba_to_aba, union)

__version__ = "0.1.0"
