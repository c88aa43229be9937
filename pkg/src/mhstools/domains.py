"""Sampling regions: boxes, balls, shells, with optional exclusions.

Sample sets are reproducible from (generator tag, seed, count, domain); the
low-discrepancy generator is an unscrambled Halton sequence, the random one a
seeded PCG64 stream, both filtered by rejection against the region.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from scipy.stats import qmc


class Point3(NamedTuple):
    x: float
    y: float
    z: float


@dataclass(frozen=True)
class Exclusion:
    """Closed-form region removed from a domain.

    kinds: "cylinder_z" (distance to the z-axis below `radius`),
    "ball" (|p - center| < radius), "slab_z" (|z - z0| < half_width).
    """

    kind: str
    radius: float = 0.0
    center: tuple = (0.0, 0.0, 0.0)
    z0: float = 0.0
    half_width: float = 0.0

    def mask(self, pts: np.ndarray) -> np.ndarray:
        if self.kind == "cylinder_z":
            return np.hypot(pts[:, 0], pts[:, 1]) < self.radius
        if self.kind == "ball":
            return np.linalg.norm(pts - np.asarray(self.center), axis=1) < self.radius
        if self.kind == "slab_z":
            return np.abs(pts[:, 2] - self.z0) < self.half_width
        raise ValueError(f"unknown exclusion kind {self.kind!r}")

    def to_dict(self):
        d = {"kind": self.kind}
        if self.kind == "cylinder_z":
            d["radius"] = self.radius
        elif self.kind == "ball":
            d["center"] = list(self.center)
            d["radius"] = self.radius
        else:
            d["z0"] = self.z0
            d["half_width"] = self.half_width
        return d


@dataclass(frozen=True)
class Domain:
    """Axis-aligned box, ball, or shell, minus an optional exclusion."""

    shape: str
    lo: tuple = (0.0, 0.0, 0.0)
    hi: tuple = (0.0, 0.0, 0.0)
    center: tuple = (0.0, 0.0, 0.0)
    r_inner: float = 0.0
    r_outer: float = 0.0
    z_min: float = 0.0
    z_max: float = 0.0
    exclusion: Exclusion | None = None

    # constructors ----------------------------------------------------------

    @staticmethod
    def box(lo, hi, exclusion=None) -> "Domain":
        lo, hi = tuple(map(float, lo)), tuple(map(float, hi))
        if not all(a < b for a, b in zip(lo, hi)):
            raise ValueError("box needs lo < hi componentwise")
        return Domain("box", lo=lo, hi=hi, exclusion=exclusion)

    @staticmethod
    def ball(center, radius, exclusion=None) -> "Domain":
        if radius <= 0:
            raise ValueError("ball radius must be positive")
        return Domain(
            "ball", center=tuple(map(float, center)), r_outer=float(radius), exclusion=exclusion
        )

    @staticmethod
    def spherical_shell(center, r_inner, r_outer, exclusion=None) -> "Domain":
        if not 0 <= r_inner < r_outer:
            raise ValueError("need 0 <= r_inner < r_outer")
        return Domain(
            "spherical_shell",
            center=tuple(map(float, center)),
            r_inner=float(r_inner),
            r_outer=float(r_outer),
            exclusion=exclusion,
        )

    @staticmethod
    def cylindrical_shell(r_inner, r_outer, z_min, z_max, exclusion=None) -> "Domain":
        if not (0 <= r_inner < r_outer and z_min < z_max):
            raise ValueError("bad cylindrical shell parameters")
        return Domain(
            "cylindrical_shell",
            r_inner=float(r_inner),
            r_outer=float(r_outer),
            z_min=float(z_min),
            z_max=float(z_max),
            exclusion=exclusion,
        )

    # geometry ---------------------------------------------------------------

    def bounding_box(self) -> tuple[np.ndarray, np.ndarray]:
        if self.shape == "box":
            return np.asarray(self.lo), np.asarray(self.hi)
        if self.shape in ("ball", "spherical_shell"):
            c = np.asarray(self.center)
            return c - self.r_outer, c + self.r_outer
        if self.shape == "cylindrical_shell":
            r = self.r_outer
            return (
                np.array([-r, -r, self.z_min]),
                np.array([r, r, self.z_max]),
            )
        raise ValueError(f"unknown shape {self.shape!r}")

    def contains(self, pts: np.ndarray) -> np.ndarray:
        pts = np.asarray(pts, dtype=float)
        if pts.ndim == 1:
            pts = pts[None, :]
        if self.shape == "box":
            lo, hi = np.asarray(self.lo), np.asarray(self.hi)
            ok = np.all((pts >= lo) & (pts <= hi), axis=1)
        elif self.shape == "ball":
            ok = np.linalg.norm(pts - np.asarray(self.center), axis=1) <= self.r_outer
        elif self.shape == "spherical_shell":
            d = np.linalg.norm(pts - np.asarray(self.center), axis=1)
            ok = (d >= self.r_inner) & (d <= self.r_outer)
        elif self.shape == "cylindrical_shell":
            r = np.hypot(pts[:, 0], pts[:, 1])
            ok = (
                (r >= self.r_inner)
                & (r <= self.r_outer)
                & (pts[:, 2] >= self.z_min)
                & (pts[:, 2] <= self.z_max)
            )
        else:
            raise ValueError(f"unknown shape {self.shape!r}")
        if self.exclusion is not None:
            ok &= ~self.exclusion.mask(pts)
        return ok

    def volume(self) -> float:
        """Volume of the region without the exclusion."""
        if self.shape == "box":
            lo, hi = self.bounding_box()
            return float(np.prod(hi - lo))
        if self.shape == "ball":
            return 4.0 / 3.0 * np.pi * self.r_outer**3
        if self.shape == "spherical_shell":
            return 4.0 / 3.0 * np.pi * (self.r_outer**3 - self.r_inner**3)
        if self.shape == "cylindrical_shell":
            return np.pi * (self.r_outer**2 - self.r_inner**2) * (self.z_max - self.z_min)
        raise ValueError(f"unknown shape {self.shape!r}")

    def to_dict(self):
        d = {"shape": self.shape}
        if self.shape == "box":
            d["lo"], d["hi"] = list(self.lo), list(self.hi)
        elif self.shape == "ball":
            d["center"], d["radius"] = list(self.center), self.r_outer
        elif self.shape == "spherical_shell":
            d["center"] = list(self.center)
            d["r_inner"], d["r_outer"] = self.r_inner, self.r_outer
        elif self.shape == "cylindrical_shell":
            d["r_inner"], d["r_outer"] = self.r_inner, self.r_outer
            d["z_min"], d["z_max"] = self.z_min, self.z_max
        if self.exclusion is not None:
            d["exclusion"] = self.exclusion.to_dict()
        return d


@dataclass(frozen=True)
class SampleSet:
    """An ordered, reproducible batch of sample points inside a domain."""

    points: np.ndarray
    generator: str
    seed: int
    domain: Domain

    def __post_init__(self):
        self.points.setflags(write=False)

    @property
    def count(self) -> int:
        return self.points.shape[0]

    def provenance(self) -> dict:
        return {
            "generator": self.generator,
            "seed": self.seed,
            "count": self.count,
            "domain": self.domain.to_dict(),
        }


def sample(domain: Domain, n: int, generator: str = "halton", seed: int = 0) -> SampleSet:
    """Draw n points from the domain by rejection from its bounding box."""
    if n <= 0:
        raise ValueError("need a positive sample count")
    lo, hi = domain.bounding_box()
    span = hi - lo
    if generator == "halton":
        engine = qmc.Halton(d=3, scramble=False)

        def draw(m):
            return lo + engine.random(m) * span

    elif generator == "random":
        rng = np.random.default_rng(seed)

        def draw(m):
            return lo + rng.random((m, 3)) * span

    else:
        raise ValueError(f"unknown generator {generator!r}")

    chunks: list[np.ndarray] = []
    got = 0
    attempts = 0
    while got < n:
        m = max(2 * (n - got), 256)
        cand = draw(m)
        keep = cand[domain.contains(cand)]
        chunks.append(keep)
        got += keep.shape[0]
        attempts += 1
        if attempts > 200:
            raise RuntimeError("rejection sampling failed; empty region?")
    pts = np.concatenate(chunks, axis=0)[:n]
    return SampleSet(points=pts, generator=generator, seed=seed, domain=domain)


def fibonacci_sphere(n: int, radius: float = 1.0, center=(0.0, 0.0, 0.0)) -> np.ndarray:
    """Deterministic quasi-uniform directions on a sphere."""
    i = np.arange(n, dtype=float)
    phi = np.pi * (3.0 - np.sqrt(5.0)) * i
    zc = 1.0 - 2.0 * (i + 0.5) / n
    r = np.sqrt(1.0 - zc**2)
    pts = np.stack([r * np.cos(phi), r * np.sin(phi), zc], axis=1)
    return np.asarray(center) + radius * pts
