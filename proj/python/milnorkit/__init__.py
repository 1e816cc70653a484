"""Python bindings for the milnorkit C++ core."""

import json as _json

from ._milnorkit import (
    CounterexampleFound,
    Certified,
    Inconclusive,
    MilnorkitError,
    Verdict,
    bb_positivity,
    check_milnor_condition,
    check_omega_empty,
    check_sing_in_V,
    corpus_ids,
    detect_polar,
    detect_radial,
    milnor_defect,
    minor_sos_poly,
    omega_defect,
    page_decompose,
    parse_mixed,
    parse_real_map,
    realify,
    run_cli,
    sample_sphere,
    sebastiani_sum,
    sing_defect,
)
from ._milnorkit import corpus_map as _corpus_map
from ._milnorkit import corpus_mixed as _corpus_mixed
from ._milnorkit import pipeline_json as _pipeline_json

__version__ = "0.1.0"


def corpus(entry_id, mixed=False):
    """Realified map of a corpus entry, or the mixed polynomial text when mixed=True."""
    return _corpus_mixed(entry_id) if mixed else _corpus_map(entry_id)


def run_pipeline(source, budget=None):
    """Run the theorem-path pipeline on a mixed polynomial, a real map or a corpus id; returns a dict."""
    return _json.loads(_pipeline_json(source, budget if budget is not None else 0))
