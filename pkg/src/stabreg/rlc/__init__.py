"""Root locus curves: algebraization, sampling, tangency solvers, verification."""

from .curve import (
    CurveSample,
    ImplicitCurve,
    SampleReport,
    build_curve,
    sample_curve,
)
from .solvers import (
    ImagAxisResult,
    ShapeResult,
    angle_candidates_numeric,
    imag_axis_interval,
    inscribed_parabola,
    ray_rejection_witness,
    stability_angle,
    stability_radius,
    stiff_abscissa,
    tangency_points,
)
from .verify import (
    Certificate,
    member,
    verify_disk,
    verify_halfplane,
    verify_imag_axis,
    verify_parabola,
    verify_sector,
)

__all__ = [
    "CurveSample",
    "ImplicitCurve",
    "SampleReport",
    "build_curve",
    "sample_curve",
    "ImagAxisResult",
    "ShapeResult",
    "angle_candidates_numeric",
    "imag_axis_interval",
    "inscribed_parabola",
    "ray_rejection_witness",
    "stability_angle",
    "stability_radius",
    "stiff_abscissa",
    "tangency_points",
    "Certificate",
    "member",
    "verify_disk",
    "verify_halfplane",
    "verify_imag_axis",
    "verify_parabola",
    "verify_sector",
]
