"""sumprod: exact-arithmetic sum-product statistics and machine-checked
certificates for the constructions bounding multiplicative energy by sumsets."""

from .cert2d import (
    Certificate2D,
    build_certificate,
    verify_asym,
    verify_corollary,
    verify_theorem_main,
)
from .certkd import CertificateKD, build_kfold_certificate, heavy_lines, line_cover
from .energy import (
    cs_lower_bound,
    dominant_class,
    dyadic_decompose,
    energy,
    energy_asym,
    energy_bruteforce,
    energy_report,
    ratio_profile,
)
from .geomkd import (
    Triangulation,
    orientation,
    placing_triangulation,
    symmetry_check,
    validate_triangulation,
)
from .numset import (
    NumberSet,
    Rat,
    dilate,
    kfold_sumset,
    load_set,
    parse_set_text,
    productset,
    ratioset,
    save_set,
    sumset,
)

__version__ = "0.1.0"

__all__ = [
    "Certificate2D",
    "CertificateKD",
    "NumberSet",
    "Rat",
    "Triangulation",
    "build_certificate",
    "build_kfold_certificate",
    "cs_lower_bound",
    "dilate",
    "dominant_class",
    "dyadic_decompose",
    "energy",
    "energy_asym",
    "energy_bruteforce",
    "energy_report",
    "heavy_lines",
    "kfold_sumset",
    "line_cover",
    "load_set",
    "orientation",
    "parse_set_text",
    "placing_triangulation",
    "productset",
    "ratio_profile",
    "ratioset",
    "save_set",
    "sumset",
    "symmetry_check",
    "validate_triangulation",
    "verify_asym",
    "verify_corollary",
    "verify_theorem_main",
]
