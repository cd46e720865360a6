"""Bounded rank-one transformations from their cutting and spacer parameters."""

from .decide import (check_disjoint, check_isomorphic, check_isomorphic_general, check_msj,
                     check_msj_ryzhikov, decide_msj, verify_verdict)
from .ergodic import EdTrace, ed_holds, totally_ergodic_up_to, verify_ed_trace
from .errors import (CapExceeded, CertificateFailed, DegenerateSpec, DepthLimited, InvalidSpec,
                     NotCanonicalAtDepth, OutOfWindow, Rank1Error, SchemeInvalid)
from .generate import (GeneratingSequence, built_into, canonical_analysis, expand,
                       incompatibility_telescope, telescope)
from .params import ParameterSpec, Stage, bounds, format_spec, heights, parse_spec, stage, validate
from .verdict import Answer, Verdict
from .words import decompose, incompatible, only_two_occurrences, word

__all__ = [
    "Answer", "CapExceeded", "CertificateFailed", "DegenerateSpec", "DepthLimited", "EdTrace",
    "GeneratingSequence", "InvalidSpec", "NotCanonicalAtDepth", "OutOfWindow", "ParameterSpec",
    "Rank1Error", "SchemeInvalid", "Stage", "Verdict", "bounds", "built_into", "canonical_analysis",
    "check_disjoint", "check_isomorphic", "check_isomorphic_general", "check_msj",
    "check_msj_ryzhikov", "decide_msj", "decompose", "ed_holds", "expand", "format_spec", "heights",
    "incompatibility_telescope", "incompatible", "only_two_occurrences", "parse_spec", "stage",
    "telescope", "totally_ergodic_up_to", "validate", "verify_ed_trace", "verify_verdict", "word",
]
