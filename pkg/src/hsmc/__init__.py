"""Model checking the AABBE fragment of Halpern-Shoham logic with regular-expression atoms."""

from .bisim import (certificate_bound, contract, h_prefix_sampling, is_h_prefix_bisimilar,
                    prefix_skeleton_sampling, sampling_word)
from .checker import (Checker, CheckerConfig, FragmentError, Verdict, check_false, check_true,
                      compute_labeling, enumerate_certificates, model_check, x_witnesses)
from .errors import InvariantViolation, ParseError
from .hsformula import Mod, parse_formula, to_pnf
from .kripke import KripkeStructure, label_word, parse_model, serialize_model
from .oracle import Oracle, oracle_holds, oracle_model_check
from .relang import accepts, compile_regex, parse_regex
from .summary import SpecSet, SummaryTable, summary_of

__all__ = [
    "Checker", "CheckerConfig", "FragmentError", "InvariantViolation", "KripkeStructure", "Mod",
    "Oracle", "ParseError", "SpecSet", "SummaryTable", "Verdict", "accepts", "certificate_bound",
    "check_false", "check_true", "compile_regex", "compute_labeling", "contract",
    "enumerate_certificates", "h_prefix_sampling", "is_h_prefix_bisimilar", "label_word",
    "model_check", "oracle_holds", "oracle_model_check", "parse_formula", "parse_model",
    "parse_regex", "prefix_skeleton_sampling", "sampling_word", "serialize_model", "summary_of",
    "to_pnf", "x_witnesses",
]
