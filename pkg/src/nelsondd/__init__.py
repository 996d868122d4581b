"""Definite descriptions in Nelson's N4 and intuitionistic logic.

Modules: ``syntax`` (formulas, substitution, parser), ``kernel`` (proof
checker), ``proofscript`` (proof files), ``semantics`` (Kripke models),
``embedding`` (the negation-eliminating translation), ``search`` (bounded
enumeration and sweeps), ``batch`` (evaluation across many models at once),
``corpus`` (bundled proofs) and ``cli``.
"""
from .embedding import pair_model, tau, unpair_model
from .kernel import CheckError, LogicId, Sequent, check_proof
from .proofscript import parse_script
from .search import Bounds, enumerate_models, find_countermodel
from .semantics import KripkeModel, evaluate, load_model, validate_model
from .syntax import parse_formula, to_text

__all__ = ["tau", "pair_model", "unpair_model", "CheckError", "LogicId", "Sequent",
           "check_proof", "parse_script", "Bounds", "enumerate_models",
           "find_countermodel", "KripkeModel", "evaluate", "load_model",
           "validate_model", "parse_formula", "to_text"]
