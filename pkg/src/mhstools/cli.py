"""Command-line interface.

Subcommands: catalog, verify, symmetry, orbit, gs, ggse, composite, export,
characteristics.  Machine-readable output is versioned JSON (schema "v1")
written with sorted keys, so identical configurations produce byte-identical
files.  Exit codes: 0 all gates pass, 1 gate failure, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import beltrami, clebsch, registry
from .beltrami import beltrami_residual, verify_h_invariance
from .characteristics import CharacteristicsProblem, InitialCurve, solve_characteristics
from .domains import Domain, sample
from .fields import EvaluationError, vector, x, y, z
from .fields import log as flog, sin as fsin
from .gradshafranov import example_decomposition, ggse_check, gs_problem_from_plane, gs_residual
from .lieops import lie_generate
from .parsing import ExpressionError, parse_scalar, parse_univariate
from .composite import AssemblyError, assemble, verify_composite
from .symmetry import (
    S,
    T,
    KillingParams,
    alpha_from_characteristics,
    killing_scan,
)

SCHEMA = "v1"

# gates applied by `verify`
BELTRAMI_GATES = {"beltrami": 1e-8, "divergence": 1e-8, "h_invariance": 1e-9}
PRESSURE_GATES = {
    "force_balance": 1e-8,
    "divergence": 1e-9,
    "constraint": 1e-8,
    "chi_along_w": 1e-8,
    "chi_along_curl": 1e-8,
}


class UsageError(Exception):
    pass


def _parse_domain(spec: str) -> Domain:
    try:
        kind, _, rest = spec.partition(":")
        vals = [float(v) for v in rest.split(",")] if rest else []
        if kind == "box" and len(vals) == 6:
            return Domain.box((vals[0], vals[2], vals[4]), (vals[1], vals[3], vals[5]))
        if kind == "ball" and len(vals) == 4:
            return Domain.ball(vals[:3], vals[3])
        if kind == "sshell" and len(vals) == 5:
            return Domain.spherical_shell(vals[:3], vals[3], vals[4])
        if kind == "cshell" and len(vals) == 4:
            return Domain.cylindrical_shell(vals[0], vals[1], vals[2], vals[3])
    except ValueError as e:
        raise UsageError(f"bad domain spec {spec!r}: {e}") from None
    raise UsageError(
        f"bad domain spec {spec!r}; use box:x0,x1,y0,y1,z0,z1 | ball:cx,cy,cz,r "
        f"| sshell:cx,cy,cz,rin,rout | cshell:rin,rout,zmin,zmax"
    )


def _parse_generator(spec: str) -> KillingParams:
    named = {
        "trans-x": ((1, 0, 0), (0, 0, 0)),
        "trans-y": ((0, 1, 0), (0, 0, 0)),
        "trans-z": ((0, 0, 1), (0, 0, 0)),
        "rot-x": ((0, 0, 0), (1, 0, 0)),
        "rot-y": ((0, 0, 0), (0, 1, 0)),
        "rot-z": ((0, 0, 0), (0, 0, 1)),
    }
    if spec in named:
        return KillingParams(*named[spec])
    try:
        apart, _, bpart = spec.partition(";")
        a = tuple(float(v) for v in apart.split(","))
        b = tuple(float(v) for v in bpart.split(","))
        return KillingParams(a, b)
    except (ValueError, TypeError):
        raise UsageError(
            f"bad generator {spec!r}; use one of {', '.join(named)} or ax,ay,az;bx,by,bz"
        ) from None


def _emit(doc: dict, args) -> None:
    text = json.dumps(doc, sort_keys=True, indent=2, allow_nan=False) + "\n"
    if getattr(args, "out", None):
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _sanitize(v):
    if isinstance(v, float) and not np.isfinite(v):
        return None
    return v


def _report_doc(rep) -> dict:
    d = rep.to_dict()
    for ch in d.get("checks", {}).values():
        for k in ("max", "mean", "rms"):
            ch[k] = _sanitize(ch[k])
    return d


def _config_doc(args, keys) -> dict:
    return {k: getattr(args, k) for k in keys if getattr(args, k, None) is not None}


def _print_report(rep, file=sys.stdout) -> None:
    print(f"[{rep.label}]", file=file)
    for name, st in rep.checks.items():
        print(
            f"  {name:22s} max={st.max:.3e}  mean={st.mean:.3e}  rms={st.rms:.3e}"
            f"  (n={st.n_samples}, errors={st.n_errors})",
            file=file,
        )


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def cmd_catalog(args) -> int:
    if args.rest and args.rest[0] == "show":
        if len(args.rest) != 2:
            raise UsageError("usage: catalog show NAME")
        entry = registry.get(args.rest[1])
        doc = {"schema": SCHEMA, "command": "catalog", "entry": entry.to_dict()}
        if args.json:
            _emit(doc, args)
        else:
            e = entry.to_dict()
            print(f"{entry.name} ({entry.kind})")
            for k in sorted(e):
                if k != "name":
                    print(f"  {k}: {e[k]}")
        return 0
    if args.rest:
        raise UsageError("usage: catalog [show NAME]")
    entries = [registry.get(n).to_dict() for n in registry.names()]
    if args.json:
        _emit({"schema": SCHEMA, "command": "catalog", "entries": entries}, args)
    else:
        print(f"{'name':12s} {'kind':9s} {'coefficient/pressure':28s} domain")
        for e in entries:
            tag = e.get("h") or e.get("chi") or ""
            print(f"{e['name']:12s} {e['kind']:9s} {tag:28s} {e['domain']['shape']}")
    return 0


def cmd_verify(args) -> int:
    entry = registry.get(args.name)
    domain = _parse_domain(args.domain) if args.domain else entry.domain
    samples = sample(domain, args.samples, generator=args.generator, seed=args.seed)
    if entry.kind == "beltrami":
        h = parse_scalar(args.h) if args.h else entry.h
        rep = beltrami_residual(entry.field, h, samples)
        hin = verify_h_invariance(entry.record, samples)
        rep.checks["h_invariance"] = hin.stat("h_invariance")
        gates = dict(BELTRAMI_GATES)
        if args.h:
            # a user-supplied coefficient need not be transported by the field
            gates.pop("h_invariance")
            rep.checks.pop("h_invariance")
        passed = rep.passes(gates)
    else:
        rep = entry.solution.residual_report(samples)
        gates = {k: v for k, v in PRESSURE_GATES.items() if k in rep.checks}
        passed = rep.passes(gates)
    doc = {
        "schema": SCHEMA,
        "command": "verify",
        "field": args.name,
        "config": _config_doc(args, ("samples", "seed", "generator", "domain", "h")),
        "report": _report_doc(rep),
        "gates": gates,
        "passed": bool(passed),
    }
    if args.format == "json" or args.out:
        _emit(doc, args)
    else:
        _print_report(rep)
        print("passed" if passed else "FAILED")
    return 0 if passed else 1


def cmd_symmetry(args) -> int:
    entry = registry.get(args.name)
    domain = _parse_domain(args.domain) if args.domain else entry.domain
    rep = killing_scan(
        entry.field,
        domain,
        n_samples=args.samples,
        threshold=args.threshold,
        seed=args.seed,
        generator=args.generator,
    )
    doc = {
        "schema": SCHEMA,
        "command": "symmetry",
        "field": args.name,
        "config": _config_doc(args, ("samples", "seed", "generator", "threshold", "domain")),
        "report": {
            **rep.to_dict(),
            "boundary_gap": _sanitize(rep.boundary_gap),
        },
    }
    if args.format == "json" or args.out:
        _emit(doc, args)
    else:
        print(f"null dimension: {rep.null_dim}")
        print("singular values:", " ".join(f"{v:.3e}" for v in rep.singular_values))
        for k in rep.null_basis:
            print(f"  generator a={k.a} b={k.b}")
    return 0


def cmd_orbit(args) -> int:
    entry = registry.get(args.name)
    if entry.kind != "beltrami":
        raise UsageError("orbit generation needs a curl-eigenfield catalog entry")
    gen = _parse_generator(args.gen)
    orbit = lie_generate(entry.record, gen, args.n, n_samples=args.samples)
    passed = all(m.passed for m in orbit.members) and not orbit.truncated
    doc = {
        "schema": SCHEMA,
        "command": "orbit",
        "field": args.name,
        "config": _config_doc(args, ("gen", "n", "samples", "seed")),
        "orbit": orbit.to_dict(),
        "passed": bool(passed),
    }
    if args.format == "json" or args.out:
        _emit(doc, args)
    else:
        for m in orbit.members:
            tag = " (terminal null)" if m.terminal_null else ""
            print(
                f"member {m.index}: beltrami={m.report.max('beltrami'):.3e} "
                f"divergence={m.report.max('divergence'):.3e}{tag}"
            )
        print("passed" if passed else "FAILED")
    return 0 if passed else 1


def cmd_gs(args) -> int:
    theta = parse_scalar(args.theta)
    w3 = parse_univariate(args.w3)
    chi = parse_univariate(args.chi)
    prob = gs_problem_from_plane(args.chart, theta, w3=w3, chi=chi)
    domain = _parse_domain(args.domain) if args.domain else prob.chart.default_domain()
    samples = sample(domain, args.samples, generator=args.generator, seed=args.seed)
    rep = gs_residual(prob, samples)
    doc = {
        "schema": SCHEMA,
        "command": "gs",
        "config": _config_doc(
            args, ("chart", "theta", "w3", "chi", "samples", "seed", "domain")
        ),
        "problem": prob.to_dict(),
        "report": _report_doc(rep),
    }
    if args.format == "json" or args.out:
        _emit(doc, args)
    else:
        _print_report(rep)
    return 0


def cmd_ggse(args) -> int:
    data, default_domain = example_decomposition(args.name)
    domain = _parse_domain(args.domain) if args.domain else default_domain
    samples = sample(domain, args.samples, generator=args.generator, seed=args.seed)
    rep = ggse_check(data, samples)
    gates = {"normalization": 1e-6, "ggse_lhs": 1e-6}
    passed = rep.passes(gates)
    doc = {
        "schema": SCHEMA,
        "command": "ggse",
        "field": args.name,
        "config": _config_doc(args, ("samples", "seed", "domain")),
        "report": _report_doc(rep),
        "gates": gates,
        "passed": bool(passed),
    }
    if args.format == "json" or args.out:
        _emit(doc, args)
    else:
        _print_report(rep)
        print("passed" if passed else "FAILED")
    return 0 if passed else 1


def cmd_composite(args) -> int:
    core = clebsch.catalog(args.core)
    shell = beltrami.catalog(args.shell)
    pf = assemble(core, shell, eps=args.eps)
    rep = verify_composite(
        pf,
        samples_per_region=args.samples,
        mc_samples=args.mc_samples,
        seed=args.seed,
    )
    passed = rep.passes()
    doc = {
        "schema": SCHEMA,
        "command": "composite",
        "config": _config_doc(args, ("core", "shell", "eps", "samples", "mc_samples", "seed")),
        "report": rep.to_dict(),
        "passed": bool(passed),
    }
    if args.format == "json" or args.out:
        _emit(doc, args)
    else:
        print(f"L2 estimate: {rep.l2_estimate:.6f} +- {rep.l2_standard_error:.6f}")
        print(f"interface jump max/mean: {rep.interface_jump_max:.4f}/{rep.interface_jump_mean:.4f}")
        print(f"interface |w.n| core/shell: {rep.interface_flux_core_max:.4f}/{rep.interface_flux_shell_max:.4f}")
        print(f"outer boundary |w.n| max: {rep.boundary_flux_max:.4f}")
        print(f"core null dimension: {rep.core_killing.null_dim}")
        print("passed" if passed else "FAILED")
    return 0 if passed else 1


def cmd_export(args) -> int:
    if args.name == "composite":
        pf = assemble(
            clebsch.catalog(args.core), beltrami.catalog(args.shell), eps=args.eps
        )
        domain = pf.ambient
        lo, hi = domain.bounding_box()
        n = args.grid
        axes = [np.linspace(lo[i], hi[i], n) for i in range(3)]
        gx, gy, gz = np.meshgrid(*axes, indexing="ij")
        pts = np.stack([gx.ravel(), gy.ravel(), gz.ravel()], axis=1)
        vals = pf.values(pts)
        tags = pf.region_tags(pts)
        cols = ["x", "y", "z", "wx", "wy", "wz"]
        data = [pts[:, 0], pts[:, 1], pts[:, 2], vals[:, 0], vals[:, 1], vals[:, 2]]
        lines = [",".join(cols + ["region"])]
        for i in range(pts.shape[0]):
            lines.append(
                ",".join(format(float(c[i]), ".17g") for c in data) + f",{tags[i]}"
            )
        text = "\n".join(lines) + "\n"
        if args.out:
            with open(args.out, "w") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
        return 0
    entry = registry.get(args.name)
    domain = _parse_domain(args.domain) if args.domain else entry.domain
    lo, hi = domain.bounding_box()
    n = args.grid
    axes = [np.linspace(lo[i], hi[i], n) for i in range(3)]
    gx, gy, gz = np.meshgrid(*axes, indexing="ij")
    pts = np.stack([gx.ravel(), gy.ravel(), gz.ravel()], axis=1)
    vals = entry.field.values(pts)
    cols = ["x", "y", "z", "wx", "wy", "wz"]
    data = [pts[:, 0], pts[:, 1], pts[:, 2], vals[:, 0], vals[:, 1], vals[:, 2]]
    if entry.chi is not None:
        cols.append("chi")
        data.append(entry.chi.values(pts))
    if args.format == "json":
        doc = {
            "schema": SCHEMA,
            "command": "export",
            "field": args.name,
            "columns": cols,
            "rows": [[_sanitize(float(c[i])) for c in data] for i in range(pts.shape[0])],
        }
        _emit(doc, args)
        return 0
    lines = [",".join(cols)]
    for i in range(pts.shape[0]):
        lines.append(",".join(format(float(c[i]), ".17g") for c in data))
    text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


_CHAR_TOL = 1e-6


def cmd_characteristics(args) -> int:
    """Reproduce a catalog potential (or chart coefficient) by transport."""
    name = args.name
    if name in ("w4_1", "w4_2"):
        if name == "w4_2":
            data, closed = 2 * flog(y), z + 2 * flog(y)
        else:
            data, closed = 0.0 * y, -z
        prob = CharacteristicsProblem(
            advecting=vector(0.0, -y, 1.0),
            source=-1.0,
            initial=InitialCurve(surface=z, data=data),
            domain=Domain.box((-2, 0.02, -3), (2, 8, 3)),
        )
        targets = sample(Domain.box((-0.1, 0.5, 0.5), (0.1, 1.5, 1.5)), args.samples,
                         seed=args.seed)
        results = solve_characteristics(prob, targets)
        ref = closed.values(targets.points)
        vals = np.array([r.value for r in results])
        ok = np.array([r.ok for r in results])
        sup = float(np.abs(vals[ok] - ref[ok]).max()) if ok.any() else float("inf")
        passed = bool(ok.all() and sup < _CHAR_TOL)
        label = "psi"
    elif name in ("abc_minimal", "cylindrical"):
        from .beltrami import ConstructionError

        try:
            alpha_from_characteristics(
                name, p=fsin(S) + T, g=-fsin(T), n_targets=args.samples,
                tol=_CHAR_TOL, seed=args.seed,
            )
            passed = True
        except ConstructionError as e:
            print(f"error: {e}", file=sys.stderr)
            passed = False
        doc = {
            "schema": SCHEMA,
            "command": "characteristics",
            "field": name,
            "quantity": "alpha",
            "config": _config_doc(args, ("samples", "seed")),
            "passed": passed,
        }
        if args.format == "json" or args.out:
            _emit(doc, args)
        else:
            print("passed" if passed else "FAILED")
        return 0 if passed else 1
    else:
        raise UsageError(
            "characteristics supports w4_1, w4_2 (psi) and abc_minimal, cylindrical (alpha)"
        )
    doc = {
        "schema": SCHEMA,
        "command": "characteristics",
        "field": name,
        "quantity": label,
        "config": _config_doc(args, ("samples", "seed")),
        "sup_error": _sanitize(sup),
        "n_failed": int((~ok).sum()),
        "passed": passed,
    }
    if args.format == "json" or args.out:
        _emit(doc, args)
    else:
        print(f"sup error vs closed form: {sup:.3e} ({int(ok.sum())}/{len(ok)} points)")
        print("passed" if passed else "FAILED")
    return 0 if passed else 1


# ---------------------------------------------------------------------------


def _add_common(p, samples=1000):
    p.add_argument("--samples", type=int, default=samples)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--generator", choices=("halton", "random"), default="halton")
    p.add_argument("--domain", default=None, help="box:...|ball:...|sshell:...|cshell:...")
    p.add_argument("--format", choices=("json", "text", "csv"), default="text")
    p.add_argument("--out", default=None)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="mhstools",
        description="Construct and verify magnetohydrostatic equilibrium fields.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("catalog", help="list built-in fields")
    p.add_argument("rest", nargs="*")
    p.add_argument("--json", action="store_true")
    p.add_argument("--out", default=None)
    p.set_defaults(fn=cmd_catalog)

    p = sub.add_parser("verify", help="run a field's residual suite")
    p.add_argument("name")
    p.add_argument("--h", default=None, help="override coefficient expression")
    _add_common(p)
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("symmetry", help="rigid-symmetry scan")
    p.add_argument("name")
    p.add_argument("--threshold", type=float, default=1e-6)
    _add_common(p)
    p.set_defaults(fn=cmd_symmetry)

    p = sub.add_parser("orbit", help="Lie-transport orbit")
    p.add_argument("name")
    p.add_argument("--gen", required=True)
    p.add_argument("--n", type=int, default=1)
    _add_common(p, samples=400)
    p.set_defaults(fn=cmd_orbit)

    p = sub.add_parser("gs", help="reduced-equation residual")
    p.add_argument("--chart", choices=("translational", "axisymmetric"), required=True)
    p.add_argument("--theta", required=True)
    p.add_argument("--w3", default="0")
    p.add_argument("--chi", default="0")
    _add_common(p)
    p.set_defaults(fn=cmd_gs)

    p = sub.add_parser("ggse", help="generalized reduction check")
    p.add_argument("name", nargs="?", default="w4_1")
    _add_common(p, samples=500)
    p.set_defaults(fn=cmd_ggse)

    p = sub.add_parser("composite", help="piecewise boundary-value assembly")
    p.add_argument("--core", default="w4_1")
    p.add_argument("--shell", default="exp_x3")
    p.add_argument("--eps", type=float, default=0.4)
    p.add_argument("--mc-samples", dest="mc_samples", type=int, default=100_000)
    _add_common(p)
    p.set_defaults(fn=cmd_composite)

    p = sub.add_parser("export", help="sample a field on a regular grid")
    p.add_argument("name", help="catalog entry, or 'composite' for a tagged assembly grid")
    p.add_argument("--grid", type=int, default=32)
    p.add_argument("--core", default="w4_1")
    p.add_argument("--shell", default="exp_x3")
    p.add_argument("--eps", type=float, default=0.4)
    _add_common(p)
    p.set_defaults(fn=cmd_export)

    p = sub.add_parser("characteristics", help="transport solver vs closed forms")
    p.add_argument("name")
    _add_common(p, samples=200)
    p.set_defaults(fn=cmd_characteristics)

    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code not in (0, None) else 0
    try:
        return args.fn(args)
    except (UsageError, ExpressionError, KeyError, EvaluationError, AssemblyError,
            ValueError) as e:
        msg = e.args[0] if e.args else str(e)
        print(f"error: {msg}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
