"""Integer linear recurrences: exact coefficients, modular zero certificates, Baker bounds."""

from .baker import BakerBound, HypothesisFailure, baker_constant, contradiction_holds, zero_free_bound_from_baker
from .coeffs import EigenData, SeqCoeffs, UnsupportedMatrix, coeffs_in_K
from .dominant import ArgmaxCert, DominantConeCert, MarginNotCertifiable, argmax_stabilize, dominant_cone_cert
from .linrec import (
    LcmCert,
    LinRec3,
    ModCert,
    NotFound,
    StepCapExceeded,
    TargetNotReached,
    certify_never_zero,
    certify_zero_only_at_start,
    mod_cycle,
    rec_from_matrix,
    seq_from_pair,
)
from .series import NoOnsetFound, eventual_rec_detect, largest_real_root, series_to_polynomial

__all__ = [
    "ArgmaxCert",
    "BakerBound",
    "DominantConeCert",
    "EigenData",
    "HypothesisFailure",
    "LcmCert",
    "LinRec3",
    "MarginNotCertifiable",
    "ModCert",
    "NoOnsetFound",
    "NotFound",
    "SeqCoeffs",
    "StepCapExceeded",
    "TargetNotReached",
    "UnsupportedMatrix",
    "argmax_stabilize",
    "baker_constant",
    "certify_never_zero",
    "certify_zero_only_at_start",
    "coeffs_in_K",
    "contradiction_holds",
    "dominant_cone_cert",
    "eventual_rec_detect",
    "largest_real_root",
    "mod_cycle",
    "rec_from_matrix",
    "seq_from_pair",
    "series_to_polynomial",
    "zero_free_bound_from_baker",
]
