"""Domain specifications, membership tests, and seeded interior/pair sampling.

Supported domains:
  d1(p, lam):  {z in C^4 : |z4|^lam < (|z1|^2+|z2|^2)^p + |z3|^2
                           < (|z1|^2+|z2|^2)^(p/2)}
  d2:          {z in C^3 : |z3|^2 < |z1|^4 + |z2|^2 < |z1|^2}
  ellipsoid(p):{z in C^n : sum |z_j|^(2 p_j) < 1}

Pairs are built by shrinking and rephasing one interior point coordinatewise,
which keeps every kernel-series argument dominated by its diagonal value.
"""

from __future__ import annotations

import cmath
import math
import random
from dataclasses import dataclass

from .errors import SamplingError

_MAX_ATTEMPTS_PER_POINT = 10**6


@dataclass(frozen=True)
class DomainSpec:
    kind: str  # "d1" | "d2" | "ellipsoid"
    p: float | None = None
    lam: float | None = None
    exponents: tuple[float, ...] = ()

    @classmethod
    def d1(cls, p: float, lam: float) -> "DomainSpec":
        if not (p > 0 and lam > 0):
            raise ValueError("d1 requires p > 0 and lam > 0")
        return cls(kind="d1", p=float(p), lam=float(lam))

    @classmethod
    def d2(cls) -> "DomainSpec":
        return cls(kind="d2")

    @classmethod
    def ellipsoid(cls, exponents) -> "DomainSpec":
        exps = tuple(float(e) for e in exponents)
        if not exps or any(e <= 0 for e in exps):
            raise ValueError("ellipsoid exponents must be positive and non-empty")
        return cls(kind="ellipsoid", exponents=exps)

    @property
    def dim(self) -> int:
        if self.kind == "d1":
            return 4
        if self.kind == "d2":
            return 3
        return len(self.exponents)


@dataclass(frozen=True)
class PointPair:
    """A pair (z, zeta) of same-dimension points; nu is always recomputed."""

    z: tuple[complex, ...]
    zeta: tuple[complex, ...]

    def __post_init__(self):
        if len(self.z) != len(self.zeta):
            raise ValueError("z and zeta must have the same dimension")

    @property
    def nu(self) -> tuple[complex, ...]:
        return tuple(zj * wj.conjugate() for zj, wj in zip(self.z, self.zeta))


def diagonal_pair(z) -> PointPair:
    z = tuple(complex(v) for v in z)
    return PointPair(z, z)


def _inequalities(spec: DomainSpec, z: tuple[complex, ...]) -> list[tuple[float, float]]:
    """Defining strict inequalities as (lhs, rhs) pairs, lhs < rhs required."""
    if spec.kind == "d1":
        rho2 = abs(z[0]) ** 2 + abs(z[1]) ** 2
        mid = rho2 ** spec.p + abs(z[2]) ** 2
        return [(abs(z[3]) ** spec.lam, mid), (mid, rho2 ** (spec.p / 2.0))]
    if spec.kind == "d2":
        mid = abs(z[0]) ** 4 + abs(z[1]) ** 2
        return [(abs(z[2]) ** 2, mid), (mid, abs(z[0]) ** 2)]
    total = sum(abs(zj) ** (2.0 * e) for zj, e in zip(z, spec.exponents))
    return [(total, 1.0)]


def contains(spec: DomainSpec, z, margin: float = 0.0) -> bool:
    """True when every defining inequality L < R holds with L <= (1-margin)*R."""
    z = tuple(complex(v) for v in z)
    if len(z) != spec.dim:
        raise ValueError(f"point has dimension {len(z)}, spec needs {spec.dim}")
    return all(lhs <= (1.0 - margin) * rhs and lhs < rhs
               for lhs, rhs in _inequalities(spec, z))


def _bounding_radii(spec: DomainSpec) -> tuple[float, ...]:
    # Implied by the defining inequalities; see module tests for the checks.
    if spec.kind == "d1":
        return (1.0, 1.0, 0.5, 1.0)
    if spec.kind == "d2":
        return (1.0, 0.5, 0.5)
    return tuple(1.0 for _ in spec.exponents)


def sample_interior(spec: DomainSpec, seed: int, count: int, margin: float = 0.0):
    """Rejection-sample `count` interior points with relative slack >= margin.

    Deterministic for a fixed (spec, seed, count, margin).
    """
    if not 0.0 <= margin < 1.0:
        raise ValueError("margin must lie in [0, 1)")
    if count < 0:
        raise ValueError("count must be >= 0")
    rng = random.Random(seed)
    radii = _bounding_radii(spec)
    points = []
    for _ in range(count):
        for attempt in range(_MAX_ATTEMPTS_PER_POINT):
            z = tuple(complex(rng.uniform(-r, r), rng.uniform(-r, r)) for r in radii)
            if contains(spec, z, margin):
                points.append(z)
                break
        else:
            raise SamplingError(
                f"no interior point of {spec.kind} found with margin {margin} "
                f"in {_MAX_ATTEMPTS_PER_POINT} attempts")
    return points


def sample_pairs(spec: DomainSpec, seed: int, count: int, margin: float = 0.0):
    """Sample pairs (z, zeta) with zeta_j = s_j * exp(i theta_j) * z_j,
    s_j in (0, 1], so |nu_j| <= |z_j|^2 for every coordinate.

    For d2 the contractions of z2 and z3 are capped by the z1 contraction so
    the Laurent-series ratios |nu2/nu1|, |nu3/nu1| never exceed their diagonal
    values.
    """
    points = sample_interior(spec, seed, count, margin)
    rng = random.Random(seed ^ 0x5EED)
    pairs = []
    for z in points:
        s = [1.0 - rng.random() for _ in z]  # in (0, 1]
        if spec.kind == "d2":
            s = [s[0], s[0] * s[1], s[0] * s[2]]
        theta = [rng.uniform(0.0, 2.0 * math.pi) for _ in z]
        zeta = tuple(sj * cmath.exp(1j * tj) * zj for sj, tj, zj in zip(s, theta, z))
        pairs.append(PointPair(z, zeta))
    return pairs
