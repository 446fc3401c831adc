"""
Parameter validation.

Validation never raises: every violated rule is collected with its
location so a caller can print them all at once.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Union

import numpy as np

from utils.errors import ParameterDomainError
from .factorized import FactorizedDensityParams, factorized_cdf
from .gllmm import GllmmParams

WEIGHT_TOLERANCE = 1e-9
MIN_SCALE = 1e-6
TAIL_TOLERANCE = 1e-9
TAIL_POINT = 1e4

# Rule names reported in violations
FAMILY_WEIGHT_SUM = "family-weight-sum"
FAMILY_WEIGHT_NONNEGATIVE = "family-weight-nonnegative"
COMPONENT_WEIGHT_SUM = "component-weight-sum"
COMPONENT_WEIGHT_NONNEGATIVE = "component-weight-nonnegative"
COMPONENT_COUNT = "component-count"
MEAN_FINITE = "mean-finite"
SCALE_POSITIVE = "scale-positive"
SCALE_DEGENERATE = "scale-degenerate"
LAYER_FINITE = "layer-finite"
CDF_MONOTONE = "cdf-monotone"
CDF_TAILS = "cdf-tails"


@dataclass(frozen=True)
class Violation:
    location: str
    rule: str
    detail: str

    def __str__(self) -> str:
        return f"{self.location}: {self.rule}: {self.detail}"


@dataclass
class ValidationReport:
    """Every violated invariant, empty when the parameters are valid."""

    violations: List[Violation] = field(default_factory=list)
    warnings: List[str] = field(default_factory=list)

    @property
    def valid(self) -> bool:
        return not self.violations

    @property
    def errors(self) -> List[str]:
        return [str(v) for v in self.violations]

    def rules(self) -> List[str]:
        return [v.rule for v in self.violations]

    def add(self, location: str, rule: str, detail: str):
        self.violations.append(Violation(location, rule, detail))

    def extend(self, other: 'ValidationReport', prefix: str = ""):
        for v in other.violations:
            location = f"{prefix}{v.location}" if prefix else v.location
            self.violations.append(Violation(location, v.rule, v.detail))
        self.warnings.extend(other.warnings)

    def to_dict(self) -> Dict[str, Any]:
        return {"valid": self.valid, "errors": self.errors, "warnings": list(self.warnings)}

    def raise_if_invalid(self, what: str = "parameters"):
        if not self.valid:
            raise ParameterDomainError(f"invalid {what}: {self.errors[0]}"
                                       + (f" (+{len(self.errors) - 1} more)" if len(self.errors) > 1 else ""))


def _validate_gllmm(params: GllmmParams, report: ValidationReport, min_scale: float):
    weights = params.family_weights
    if np.any(weights < 0.0) or not np.all(np.isfinite(weights)):
        report.add("family_weights", FAMILY_WEIGHT_NONNEGATIVE,
                   f"family weights {weights.tolist()} must be finite and >= 0")
    if not abs(weights.sum() - 1.0) <= WEIGHT_TOLERANCE:
        report.add("family_weights", FAMILY_WEIGHT_SUM,
                   f"family weights sum to {weights.sum():.12g}, expected 1")

    for name, _, components in params.families():
        if components.shape[0] < 1:
            report.add(name, COMPONENT_COUNT, "family needs at least one component")
            continue
        omega, means, spreads = components[:, 0], components[:, 1], components[:, 2]
        if np.any(omega < 0.0) or not np.all(np.isfinite(omega)):
            report.add(f"{name}.weights", COMPONENT_WEIGHT_NONNEGATIVE,
                       f"component weights {omega.tolist()} must be finite and >= 0")
        if not abs(omega.sum() - 1.0) <= WEIGHT_TOLERANCE:
            report.add(f"{name}.weights", COMPONENT_WEIGHT_SUM,
                       f"component weights sum to {omega.sum():.12g}, expected 1")
        label = "variance" if name == "gaussian" else "scale"
        for index in range(components.shape[0]):
            if not np.isfinite(means[index]):
                report.add(f"{name}[{index}].mean", MEAN_FINITE, "mean must be finite")
            spread = float(spreads[index])
            if not np.isfinite(spread) or spread <= 0.0:
                report.add(f"{name}[{index}].{label}", SCALE_POSITIVE,
                           f"{label} {spread!r} must be finite and > 0")
            elif spread < min_scale:
                report.add(f"{name}[{index}].{label}", SCALE_DEGENERATE,
                           f"{label} {spread!r} below minimum {min_scale}")


def _validate_factorized(params: FactorizedDensityParams, report: ValidationReport):
    for name in ("weights", "biases", "gates"):
        if not np.all(np.isfinite(getattr(params, name))):
            report.add(name, LAYER_FINITE, f"{name} contain non-finite values")
    if not report.valid:
        return

    grid = np.concatenate(([-TAIL_POINT], np.linspace(-200.0, 200.0, 4001), [TAIL_POINT]))
    for channel in range(params.channels):
        values = factorized_cdf(params, channel, grid)
        if np.any(np.diff(values) < 0.0):
            report.add(f"channel[{channel}]", CDF_MONOTONE, "cumulative decreases on the sample grid")
        if values[0] >= TAIL_TOLERANCE or values[-1] <= 1.0 - TAIL_TOLERANCE:
            report.add(f"channel[{channel}]", CDF_TAILS,
                       f"cumulative at +/-{TAIL_POINT:g} is ({values[0]:.3g}, {values[-1]:.3g}),"
                       " expected (0, 1)")


def validate_params(params: Union[GllmmParams, FactorizedDensityParams],
                    min_scale: float = MIN_SCALE) -> ValidationReport:
    """
    Check every invariant of a parameter object.

    Args:
        params: GLLMM or factorized-density parameters
        min_scale: Smallest accepted spread before params count as degenerate

    Returns:
        Report listing each violation with its location; empty iff valid
    """
    report = ValidationReport()
    if isinstance(params, GllmmParams):
        _validate_gllmm(params, report, min_scale)
    elif isinstance(params, FactorizedDensityParams):
        _validate_factorized(params, report)
    else:
        report.add("params", "type", f"unsupported parameter type {type(params).__name__}")
    return report
