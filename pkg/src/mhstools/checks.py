"""Generic residual evaluators over sample sets."""

from __future__ import annotations

import numpy as np

from .domains import SampleSet
from .fields import (
    Curl,
    Cross,
    Divergence,
    EvalContext,
    Gradient,
    ScalarField,
    VectorField,
)
from .reports import CheckStats, ResidualReport, stats_from_values


def scalar_abs_stats(f: ScalarField, samples: SampleSet) -> tuple[CheckStats, dict]:
    """|f| statistics over the samples; per-sample failures excluded."""
    pts = samples.points
    ctx = EvalContext(pts.shape[0])
    with np.errstate(all="ignore"):
        v = f.jet(pts, order=0, ctx=ctx).value
    return stats_from_values(v, ctx.invalid), ctx.errors


def vector_norm_stats(w: VectorField, samples: SampleSet) -> tuple[CheckStats, dict]:
    """Euclidean norm statistics of a vector field over the samples."""
    pts = samples.points
    ctx = EvalContext(pts.shape[0])
    with np.errstate(all="ignore"):
        j = w.jets(pts, order=0, ctx=ctx)
    vals = np.sqrt(sum(c.value**2 for c in j))
    return stats_from_values(vals, ctx.invalid), ctx.errors


def residual_report(label: str, samples: SampleSet, channels: dict) -> ResidualReport:
    """Evaluate named scalar/vector residual expressions into one report."""
    checks: dict[str, CheckStats] = {}
    errors: dict[str, int] = {}
    for name, expr in channels.items():
        if isinstance(expr, VectorField):
            st, errs = vector_norm_stats(expr, samples)
        else:
            st, errs = scalar_abs_stats(expr, samples)
        checks[name] = st
        for k, v in errs.items():
            errors[k] = errors.get(k, 0) + v
    rep = ResidualReport(label=label, checks=checks, provenance=samples.provenance())
    if errors:
        rep.notes["error_nodes"] = errors
    return rep


def force_balance_residual(
    w: VectorField, chi: ScalarField, samples: SampleSet
) -> ResidualReport:
    """Residuals of the equilibrium system: |w x curl w - grad chi|, |div w|."""
    res = Cross(w, Curl(w)) - Gradient(chi)
    return residual_report(
        "force_balance",
        samples,
        {"force_balance": res, "divergence": Divergence(w)},
    )
