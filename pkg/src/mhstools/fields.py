"""Expression trees for scalar and vector fields on R^3.

Trees are immutable and evaluate to second-order jets (value, gradient,
Hessian) at batches of points.  Differentiation is exact forward-mode through
the tree; structural nodes that consume a derivative order (gradient, curl,
divergence, Lie derivative) obtain third-order information, when a caller
requests full jets of their output, by central finite differences of exact
jet evaluations.

Domain violations (log of a non-positive argument, division by zero, ...) are
recorded per sample point and never abort a batched evaluation; single-point
evaluation raises `EvaluationError` naming the offending node.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .jets import Jet2, JetValue, jatan2, jcos, jexp, jlog, jpow, jsin, jsqrt

# Step for the finite-difference fallback that supplies third derivatives.
FD_STEP = 1e-4

_AXES = "xyz"


class EvaluationError(ValueError):
    """A field could not be evaluated at the requested point."""


class EvalContext:
    """Per-evaluation record of invalid sample points."""

    __slots__ = ("n", "invalid", "errors")

    def __init__(self, n: int):
        self.n = n
        self.invalid = np.zeros(n, dtype=bool)
        self.errors: dict[str, int] = {}

    def flag(self, node, mask: np.ndarray) -> None:
        if mask.any():
            self.invalid |= mask
            key = node.render() if hasattr(node, "render") else str(node)
            self.errors[key] = self.errors.get(key, 0) + int(mask.sum())


def as_points(p) -> np.ndarray:
    """Coerce a point or array of points to shape (N, 3)."""
    a = np.asarray(p, dtype=float)
    if a.ndim == 1:
        a = a[None, :]
    if a.ndim != 2 or a.shape[1] != 3:
        raise ValueError(f"expected points of shape (N, 3), got {a.shape}")
    return a


def _num(v: float) -> str:
    f = float(v)
    if f.is_integer() and abs(f) < 1e15:
        return str(int(f))
    return repr(f)


# ---------------------------------------------------------------------------
# scalar fields
# ---------------------------------------------------------------------------


class ScalarField:
    """Base class for scalar expression nodes."""

    precedence = 100

    def jet(self, pts: np.ndarray, order: int = 2, ctx: EvalContext | None = None) -> Jet2:
        raise NotImplementedError

    def values(self, pts) -> np.ndarray:
        """Values at (N, 3) points; invalid samples are NaN."""
        pts = as_points(pts)
        ctx = EvalContext(pts.shape[0])
        with np.errstate(all="ignore"):
            v = self.jet(pts, order=0, ctx=ctx).value.copy()
        v[ctx.invalid] = np.nan
        return v

    def __call__(self, p) -> float:
        pts = as_points(p)
        ctx = EvalContext(pts.shape[0])
        with np.errstate(all="ignore"):
            v = self.jet(pts, order=0, ctx=ctx).value
        _raise_if_invalid(ctx, v)
        return float(v[0])

    def render(self) -> str:
        raise NotImplementedError

    def __repr__(self) -> str:
        return self.render()

    def _wrap(self, prec: int) -> str:
        s = self.render()
        return f"({s})" if self.precedence < prec else s

    # operator sugar ---------------------------------------------------------

    def __add__(self, other):
        return Add(self, as_scalar(other))

    def __radd__(self, other):
        return Add(as_scalar(other), self)

    def __sub__(self, other):
        return Sub(self, as_scalar(other))

    def __rsub__(self, other):
        return Sub(as_scalar(other), self)

    def __mul__(self, other):
        return Mul(self, as_scalar(other))

    def __rmul__(self, other):
        return Mul(as_scalar(other), self)

    def __truediv__(self, other):
        return Div(self, as_scalar(other))

    def __rtruediv__(self, other):
        return Div(as_scalar(other), self)

    def __pow__(self, e):
        return Pow(self, float(e))

    def __neg__(self):
        return Neg(self)


def as_scalar(obj) -> ScalarField:
    if isinstance(obj, ScalarField):
        return obj
    if isinstance(obj, (int, float, np.floating, np.integer)):
        return Const(float(obj))
    raise TypeError(f"cannot interpret {obj!r} as a scalar field")


def _raise_if_invalid(ctx: EvalContext, values: np.ndarray) -> None:
    bad = ctx.invalid | ~np.isfinite(np.atleast_1d(values))
    if bad.any():
        if ctx.errors:
            node, _ = next(iter(ctx.errors.items()))
            raise EvaluationError(f"evaluation failed in node {node!r}")
        raise EvaluationError("evaluation produced a non-finite result")


@dataclass(frozen=True)
class Const(ScalarField):
    c: float

    def jet(self, pts, order=2, ctx=None):
        return Jet2.constant(np.asarray(self.c), n=pts.shape[0])

    def render(self):
        return _num(self.c)


@dataclass(frozen=True)
class Coord(ScalarField):
    axis: int

    def jet(self, pts, order=2, ctx=None):
        return Jet2.coordinate(pts, self.axis)

    def render(self):
        return _AXES[self.axis]


@dataclass(frozen=True)
class Placeholder(ScalarField):
    """Free variable used in univariate expressions; must be substituted."""

    name: str

    def jet(self, pts, order=2, ctx=None):
        raise EvaluationError(f"unbound variable {self.name!r}; substitute it first")

    def render(self):
        return self.name


@dataclass(frozen=True)
class Add(ScalarField):
    a: ScalarField
    b: ScalarField
    precedence = 10

    def jet(self, pts, order=2, ctx=None):
        return self.a.jet(pts, order, ctx) + self.b.jet(pts, order, ctx)

    def render(self):
        return f"{self.a._wrap(10)} + {self.b._wrap(11)}"


@dataclass(frozen=True)
class Sub(ScalarField):
    a: ScalarField
    b: ScalarField
    precedence = 10

    def jet(self, pts, order=2, ctx=None):
        return self.a.jet(pts, order, ctx) - self.b.jet(pts, order, ctx)

    def render(self):
        return f"{self.a._wrap(10)} - {self.b._wrap(11)}"


@dataclass(frozen=True)
class Mul(ScalarField):
    a: ScalarField
    b: ScalarField
    precedence = 20

    def jet(self, pts, order=2, ctx=None):
        return self.a.jet(pts, order, ctx) * self.b.jet(pts, order, ctx)

    def render(self):
        return f"{self.a._wrap(20)}*{self.b._wrap(21)}"


@dataclass(frozen=True)
class Div(ScalarField):
    a: ScalarField
    b: ScalarField
    precedence = 20

    def jet(self, pts, order=2, ctx=None):
        ja = self.a.jet(pts, order, ctx)
        jb = self.b.jet(pts, order, ctx)
        if ctx is not None:
            ctx.flag(self, jb.value == 0.0)
        return ja / jb

    def render(self):
        return f"{self.a._wrap(20)}/{self.b._wrap(21)}"


@dataclass(frozen=True)
class Neg(ScalarField):
    a: ScalarField
    precedence = 15

    def jet(self, pts, order=2, ctx=None):
        return -self.a.jet(pts, order, ctx)

    def render(self):
        return f"-{self.a._wrap(16)}"


@dataclass(frozen=True)
class Pow(ScalarField):
    base: ScalarField
    expo: float
    precedence = 30

    def jet(self, pts, order=2, ctx=None):
        j = self.base.jet(pts, order, ctx)
        if ctx is not None:
            e = self.expo
            if e != int(e):
                ctx.flag(self, j.value < 0.0)
            elif e < 0:
                ctx.flag(self, j.value == 0.0)
        return jpow(j, self.expo)

    def render(self):
        return f"{self.base._wrap(31)}^{_num(self.expo)}"


def _unary(name: str, fn, domain=None):
    @dataclass(frozen=True)
    class Node(ScalarField):
        a: ScalarField

        def jet(self, pts, order=2, ctx=None):
            j = self.a.jet(pts, order, ctx)
            if ctx is not None and domain is not None:
                ctx.flag(self, domain(j.value))
            return fn(j)

        def render(self):
            return f"{name}({self.a.render()})"

    Node.__name__ = name.capitalize()
    Node.__qualname__ = Node.__name__
    return Node


Exp = _unary("exp", jexp)
Log = _unary("log", jlog, domain=lambda v: v <= 0.0)
Sin = _unary("sin", jsin)
Cos = _unary("cos", jcos)
Sqrt = _unary("sqrt", jsqrt, domain=lambda v: v < 0.0)


@dataclass(frozen=True)
class Atan2(ScalarField):
    ynode: ScalarField
    xnode: ScalarField

    def jet(self, pts, order=2, ctx=None):
        jy = self.ynode.jet(pts, order, ctx)
        jx = self.xnode.jet(pts, order, ctx)
        if ctx is not None:
            ctx.flag(self, (jy.value == 0.0) & (jx.value == 0.0))
        return jatan2(jy, jx)

    def render(self):
        return f"atan2({self.ynode.render()}, {self.xnode.render()})"


@dataclass(frozen=True)
class Dot(ScalarField):
    """Pointwise inner product of two vector fields."""

    u: "VectorField"
    v: "VectorField"

    def jet(self, pts, order=2, ctx=None):
        ju = self.u.jets(pts, order, ctx)
        jv = self.v.jets(pts, order, ctx)
        return ju[0] * jv[0] + ju[1] * jv[1] + ju[2] * jv[2]

    def render(self):
        return f"dot({self.u.render()}, {self.v.render()})"


@dataclass(frozen=True)
class VComponent(ScalarField):
    w: "VectorField"
    axis: int

    def jet(self, pts, order=2, ctx=None):
        return self.w.jets(pts, order, ctx)[self.axis]

    def render(self):
        return f"{self.w.render()}[{self.axis}]"


@dataclass(frozen=True)
class Divergence(ScalarField):
    """Divergence of a vector field; consumes one derivative order."""

    w: "VectorField"

    def jet(self, pts, order=2, ctx=None):
        child = self.w.jets(pts, min(order + 1, 2), ctx)
        j = child[0].partial(0) + child[1].partial(1) + child[2].partial(2)
        if order >= 2:
            j.hess[...] = _fd_scalar_hessian(self, pts, ctx)
        return j

    def render(self):
        return f"div({self.w.render()})"


@dataclass(frozen=True)
class Compose1(ScalarField):
    """Composition g(u) (or g'(u)) of a univariate expression with a field.

    `gexpr` is an expression over a single Placeholder `var`; the chain rule
    is applied exactly by evaluating `gexpr` on jets seeded along the first
    axis.  With deriv=1 the node evaluates the derivative of g at u; its own
    second derivatives then require g''' and fall back to univariate finite
    differences.
    """

    gexpr: ScalarField
    inner: ScalarField
    var: str = "T"
    deriv: int = 0

    def _seed(self, tvals):
        pts = np.zeros((tvals.shape[0], 3))
        pts[:, 0] = tvals
        return pts

    def jet(self, pts, order=2, ctx=None):
        ju = self.inner.jet(pts, order, ctx)
        gx = substitute(self.gexpr, {self.var: X})
        tpts = self._seed(ju.value)
        jt = gx.jet(tpts, 2, ctx)
        g0, g1, g2 = jt.value, jt.grad[:, 0], jt.hess[:, 0]
        if self.deriv == 0:
            value, d1, d2 = g0, g1, g2
        elif self.deriv == 1:
            value, d1 = g1, g2
            if order >= 2:
                # third derivative of g by finite differences of exact g''
                offsets, denom = _fd_weights(FD_STEP)
                acc = np.zeros_like(g2)
                for off, wgt in offsets:
                    acc += wgt * gx.jet(self._seed(ju.value + off), 2, ctx).hess[:, 0]
                d2 = acc / denom
            else:
                d2 = np.zeros_like(g2)
        else:
            raise ValueError("deriv must be 0 or 1")
        return ju.chain(value, d1, d2)

    def render(self):
        base = f"[{self.gexpr.render()}]"
        tag = "'" if self.deriv else ""
        return f"{base}{tag}({self.inner.render()})"


# public constructors --------------------------------------------------------

X = Coord(0)
Y = Coord(1)
Z = Coord(2)
x, y, z = X, Y, Z


def exp(f) -> ScalarField:
    return Exp(as_scalar(f))


def log(f) -> ScalarField:
    return Log(as_scalar(f))


def sin(f) -> ScalarField:
    return Sin(as_scalar(f))


def cos(f) -> ScalarField:
    return Cos(as_scalar(f))


def sqrt(f) -> ScalarField:
    return Sqrt(as_scalar(f))


def atan2(fy, fx) -> ScalarField:
    return Atan2(as_scalar(fy), as_scalar(fx))


def substitute(expr: ScalarField, mapping: dict) -> ScalarField:
    """Rebuild `expr` with Placeholder/Coord nodes replaced per `mapping`.

    Keys are placeholder names ("T", "s", ...) or axis letters "x", "y", "z".
    """

    def rebuild(node):
        if isinstance(node, Placeholder) and node.name in mapping:
            return as_scalar(mapping[node.name])
        if isinstance(node, Coord) and _AXES[node.axis] in mapping:
            return as_scalar(mapping[_AXES[node.axis]])
        if isinstance(node, (Const, Coord, Placeholder)):
            return node
        if isinstance(node, (Add, Sub, Mul, Div)):
            return type(node)(rebuild(node.a), rebuild(node.b))
        if isinstance(node, Neg):
            return Neg(rebuild(node.a))
        if isinstance(node, Pow):
            return Pow(rebuild(node.base), node.expo)
        if isinstance(node, (Exp, Log, Sin, Cos, Sqrt)):
            return type(node)(rebuild(node.a))
        if isinstance(node, Atan2):
            return Atan2(rebuild(node.ynode), rebuild(node.xnode))
        if isinstance(node, Compose1):
            return Compose1(node.gexpr, rebuild(node.inner), node.var, node.deriv)
        raise TypeError(f"cannot substitute inside node {node!r}")

    return rebuild(expr)


def univariate_jet(expr: ScalarField, tvals: np.ndarray, var: str = "T"):
    """Evaluate a univariate expression and its first two derivatives.

    The expression is over a single Placeholder (or the x coordinate); it is
    evaluated on jets seeded along the first axis, so the chain rule is exact.
    """
    tvals = np.asarray(tvals, dtype=float)
    expr0 = substitute(expr, {var: X}) if var != "x" else expr
    pts = np.zeros((tvals.shape[0], 3))
    pts[:, 0] = tvals
    ctx = EvalContext(tvals.shape[0])
    with np.errstate(all="ignore"):
        j = expr0.jet(pts, order=2, ctx=ctx)
    return j.value, j.grad[:, 0], j.hess[:, 0], ctx


# ---------------------------------------------------------------------------
# vector fields
# ---------------------------------------------------------------------------


class VectorField:
    """Base class for vector expression nodes."""

    def jets(self, pts: np.ndarray, order: int = 2, ctx: EvalContext | None = None):
        """Component jets at (N, 3) points.

        Entries up to `order` (0: values, 1: +gradients, 2: +Hessians) are
        meaningful; higher entries may be zero-filled.
        """
        raise NotImplementedError

    def values(self, pts) -> np.ndarray:
        """Component values at (N, 3) points, shape (N, 3); invalid rows NaN."""
        pts = as_points(pts)
        ctx = EvalContext(pts.shape[0])
        with np.errstate(all="ignore"):
            j = self.jets(pts, order=0, ctx=ctx)
        out = np.stack([c.value for c in j], axis=1)
        out[ctx.invalid] = np.nan
        return out

    def __call__(self, p) -> np.ndarray:
        pts = as_points(p)
        ctx = EvalContext(pts.shape[0])
        with np.errstate(all="ignore"):
            j = self.jets(pts, order=0, ctx=ctx)
        out = np.stack([c.value for c in j], axis=1)
        _raise_if_invalid(ctx, out.ravel())
        return out[0]

    def render(self) -> str:
        raise NotImplementedError

    def __repr__(self) -> str:
        return self.render()

    def __add__(self, other):
        return VAdd(self, other)

    def __sub__(self, other):
        return VAdd(self, VScale(Const(-1.0), other))

    def __neg__(self):
        return VScale(Const(-1.0), self)

    def __mul__(self, other):
        return VScale(as_scalar(other), self)

    __rmul__ = __mul__


def _fd_weights(step: float):
    # fourth-order central stencil for a first derivative
    return ((2 * step, -1.0), (step, 8.0), (-step, -8.0), (-2 * step, 1.0)), 12.0 * step


def _fd_vector_hessians(node: VectorField, pts: np.ndarray, ctx, step: float = FD_STEP):
    """Third-order fallback: finite differences of exact component gradients."""
    n = pts.shape[0]
    d = np.zeros((3, 3, n, 3))  # d[k][c] = d/dx_k grad(component c)
    for k in range(3):
        acc = [np.zeros((n, 3)) for _ in range(3)]
        offsets, denom = _fd_weights(step)
        for off, wgt in offsets:
            q = pts.copy()
            q[:, k] += off
            jq = node.jets(q, order=1, ctx=ctx)
            for c in range(3):
                acc[c] += wgt * jq[c].grad
        for c in range(3):
            d[k, c] = acc[c] / denom
    hess = [np.zeros((n, 6)) for _ in range(3)]
    for c in range(3):
        for k in range(6):
            i, j = ((0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2))[k]
            hess[c][:, k] = 0.5 * (d[i, c][:, j] + d[j, c][:, i])
    return hess


def _fd_scalar_hessian(node: ScalarField, pts: np.ndarray, ctx, step: float = FD_STEP):
    n = pts.shape[0]
    d = np.zeros((3, n, 3))
    for k in range(3):
        acc = np.zeros((n, 3))
        offsets, denom = _fd_weights(step)
        for off, wgt in offsets:
            q = pts.copy()
            q[:, k] += off
            acc += wgt * node.jet(q, order=1, ctx=ctx).grad
        d[k] = acc / denom
    hess = np.zeros((n, 6))
    for k in range(6):
        i, j = ((0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2))[k]
        hess[:, k] = 0.5 * (d[i][:, j] + d[j][:, i])
    return hess


class _Consuming(VectorField):
    """Vector node whose components are derivatives of its children."""

    def _jets_base(self, pts, order, ctx):
        raise NotImplementedError

    def jets(self, pts, order=2, ctx=None):
        if order <= 1:
            return self._jets_base(pts, order, ctx)
        jx, jy, jz = self._jets_base(pts, 1, ctx)
        hx, hy, hz = _fd_vector_hessians(self, pts, ctx)
        jx.hess, jy.hess, jz.hess = hx, hy, hz
        return jx, jy, jz


@dataclass(frozen=True)
class FromComponents(VectorField):
    fx: ScalarField
    fy: ScalarField
    fz: ScalarField

    def jets(self, pts, order=2, ctx=None):
        return (
            self.fx.jet(pts, order, ctx),
            self.fy.jet(pts, order, ctx),
            self.fz.jet(pts, order, ctx),
        )

    def render(self):
        return f"({self.fx.render()}, {self.fy.render()}, {self.fz.render()})"


@dataclass(frozen=True)
class Gradient(_Consuming):
    f: ScalarField

    def _jets_base(self, pts, order, ctx):
        j = self.f.jet(pts, min(order + 1, 2), ctx)
        return j.partial(0), j.partial(1), j.partial(2)

    def render(self):
        return f"grad({self.f.render()})"


@dataclass(frozen=True)
class Curl(_Consuming):
    w: VectorField

    def _jets_base(self, pts, order, ctx):
        j = self.w.jets(pts, min(order + 1, 2), ctx)
        return (
            j[2].partial(1) - j[1].partial(2),
            j[0].partial(2) - j[2].partial(0),
            j[1].partial(0) - j[0].partial(1),
        )

    def render(self):
        return f"curl({self.w.render()})"


@dataclass(frozen=True)
class Cross(VectorField):
    u: VectorField
    v: VectorField

    def jets(self, pts, order=2, ctx=None):
        a = self.u.jets(pts, order, ctx)
        b = self.v.jets(pts, order, ctx)
        return (
            a[1] * b[2] - a[2] * b[1],
            a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0],
        )

    def render(self):
        return f"cross({self.u.render()}, {self.v.render()})"


@dataclass(frozen=True)
class VAdd(VectorField):
    u: VectorField
    v: VectorField

    def jets(self, pts, order=2, ctx=None):
        a = self.u.jets(pts, order, ctx)
        b = self.v.jets(pts, order, ctx)
        return (a[0] + b[0], a[1] + b[1], a[2] + b[2])

    def render(self):
        return f"{self.u.render()} + {self.v.render()}"


@dataclass(frozen=True)
class VScale(VectorField):
    f: ScalarField
    w: VectorField

    def __post_init__(self):
        if not isinstance(self.f, ScalarField):
            object.__setattr__(self, "f", as_scalar(self.f))

    def jets(self, pts, order=2, ctx=None):
        jf = self.f.jet(pts, order, ctx)
        jw = self.w.jets(pts, order, ctx)
        return (jf * jw[0], jf * jw[1], jf * jw[2])

    def render(self):
        return f"({self.f.render()})*{self.w.render()}"


@dataclass(frozen=True)
class Lie(_Consuming):
    """Lie derivative of `w` along `xi`: (xi.grad) w - (w.grad) xi."""

    xi: VectorField
    w: VectorField

    def _jets_base(self, pts, order, ctx):
        co = min(order + 1, 2)
        jx = self.xi.jets(pts, co, ctx)
        jw = self.w.jets(pts, co, ctx)
        out = []
        for k in range(3):
            acc = jx[0] * jw[k].partial(0) - jw[0] * jx[k].partial(0)
            for i in (1, 2):
                acc = acc + jx[i] * jw[k].partial(i) - jw[i] * jx[k].partial(i)
            out.append(acc)
        return tuple(out)

    def render(self):
        return f"lie({self.xi.render()}, {self.w.render()})"


@dataclass(frozen=True)
class LieEuclidean(_Consuming):
    """Lie derivative of `w` along the rigid generator a + b x r.

    Uses the closed form (a + b x r) . grad w - b x w; the generator's own
    gradient is the constant cross-product matrix of b.
    """

    a: tuple
    b: tuple
    w: VectorField

    def _jets_base(self, pts, order, ctx):
        co = min(order + 1, 2)
        jw = self.w.jets(pts, co, ctx)
        a = np.asarray(self.a, dtype=float)
        b = np.asarray(self.b, dtype=float)
        n = pts.shape[0]
        # generator components as exact jets (linear fields)
        xi = []
        bmat = np.array(
            [[0.0, -b[2], b[1]], [b[2], 0.0, -b[0]], [-b[1], b[0], 0.0]]
        )
        xivals = a[None, :] + np.cross(np.broadcast_to(b, (n, 3)), pts)
        for i in range(3):
            g = np.tile(bmat[i], (n, 1))
            xi.append(Jet2(xivals[:, i].copy(), g, np.zeros((n, 6))))
        out = []
        for k in range(3):
            acc = xi[0] * jw[k].partial(0)
            for i in (1, 2):
                acc = acc + xi[i] * jw[k].partial(i)
            # subtract (b x w)_k
            i1, i2 = ((1, 2), (2, 0), (0, 1))[k]
            acc = acc - (jw[i2] * float(b[i1]) - jw[i1] * float(b[i2]))
            out.append(acc)
        return tuple(out)

    def render(self):
        a = ",".join(_num(v) for v in self.a)
        b = ",".join(_num(v) for v in self.b)
        return f"lie_euclidean(a=({a}), b=({b}), {self.w.render()})"


# public constructors --------------------------------------------------------


def vector(fx, fy, fz) -> VectorField:
    return FromComponents(as_scalar(fx), as_scalar(fy), as_scalar(fz))


def grad(f: ScalarField) -> VectorField:
    return Gradient(f)


def curl(w: VectorField) -> VectorField:
    return Curl(w)


def cross(u: VectorField, v: VectorField) -> VectorField:
    return Cross(u, v)


def dot(u: VectorField, v: VectorField) -> ScalarField:
    return Dot(u, v)


def divergence(w: VectorField) -> ScalarField:
    return Divergence(w)


def lie_derivative(w: VectorField, xi: VectorField) -> VectorField:
    """Lie derivative of w along xi, as a structural node."""
    return Lie(xi, w)


# single-point conveniences ---------------------------------------------------


def eval_jet(f: ScalarField, p) -> JetValue:
    """Exact value, gradient and Hessian of a scalar field at one point."""
    pts = as_points(p)
    ctx = EvalContext(pts.shape[0])
    with np.errstate(all="ignore"):
        j = f.jet(pts, order=2, ctx=ctx)
    _raise_if_invalid(ctx, np.concatenate([j.value, j.grad.ravel(), j.hess.ravel()]))
    return JetValue(float(j.value[0]), j.grad[0].copy(), j.hessian()[0])


def div(w: VectorField, p) -> float:
    """Divergence of a vector field at one point."""
    return Divergence(w)(p)


def characteristic_polynomial(w_at_p, phi_grad) -> float:
    """Symbol of the equilibrium system: |grad phi|^2 (w . grad phi)^2.

    Vanishing marks a characteristic surface; the first factor is the
    elliptic part, the squared advective factor the (double) hyperbolic one.
    """
    w = np.asarray(w_at_p, dtype=float)
    g = np.asarray(phi_grad, dtype=float)
    return float(g.dot(g) * w.dot(g) ** 2)
