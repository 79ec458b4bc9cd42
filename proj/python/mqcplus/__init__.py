"""Minimal predicate logic with shift and reset: checker, reducer, CPS and DNS translations."""

import json

from ._mqc import (
    CheckError,
    ParseError,
    ReductionError,
    TranslationError,
    check,
    check_file,
    check_source,
    cps,
    demo,
    dns_iso,
    is_sigma,
    normalize,
    parse_formula,
    parse_proof,
    suite_names,
    translate_sub,
    translate_super,
)
from ._mqc import run_suite_json as _run_suite_json


def run_suite(name, cases=100, seed=42):
    """Runs a property suite and returns its report as a dict."""
    return json.loads(_run_suite_json(name, cases, seed))


__all__ = [
    "CheckError",
    "ParseError",
    "ReductionError",
    "TranslationError",
    "check",
    "check_file",
    "check_source",
    "cps",
    "demo",
    "dns_iso",
    "is_sigma",
    "normalize",
    "parse_formula",
    "parse_proof",
    "run_suite",
    "suite_names",
    "translate_sub",
    "translate_super",
]
