"""Verification sweeps behind `bergkern verify`: hypergeometric identities,
norm formulas vs quadrature, and kernel route agreement.

Every sweep is seeded and deterministic; reports carry one row per checked
case plus informational rows for the rejected formula variants that the
validated forms replace.
"""

from __future__ import annotations

import cmath
import itertools
import math
import random
import time

from .domains import DomainSpec, PointPair, diagonal_pair, sample_interior, sample_pairs
from .hypergeo import (TruncationPolicy, appell_fa, closed_2f1_family,
                       closed_2f1_recurrence, contiguous_relation_check,
                       doubled_index_multisum, fa_decomposition_rhs,
                       fa_equal_params_closed, gauss_2f1)
from .kernels import (OperatorWeights, _kernel_closed_d2_alternate, kernel_closed_d1_nu,
                      kernel_closed_d2_nu, kernel_series_d1_nu, kernel_series_d2_nu,
                      kernel_series_ellipsoid_nu, potential_closed_d1)
from .norms import norm_closed, norm_quadrature
from .numerics import dual_var
from .report import VerificationReport, make_row

D2_SPOT_NU = (0.25 + 0j, 0j, 0j)


def _finish(report: VerificationReport, t0: float) -> VerificationReport:
    report.wall_time_ms = int((time.perf_counter() - t0) * 1000)
    report.sort()
    return report


def _draw_in_disk(rng: random.Random, radius: float) -> complex:
    return cmath.rect(radius * math.sqrt(rng.random()), rng.uniform(0.0, 2 * math.pi))


def _draw_z_right_halfplane(rng: random.Random, radius: float = 0.6,
                            min_re_1mz: float = 0.2) -> complex:
    while True:
        z = _draw_in_disk(rng, radius)
        if (1 - z).real > min_re_1mz:
            return z


def run_identity_suite(trials: int = 200, seed: int = 7, tol: float = 1e-10,
                       recurrence_tol: float = 1e-9, tail_tol: float = 1e-13,
                       max_degree: int = 400) -> VerificationReport:
    """Hypergeometric identity sweep: multisum collapse, closed 2F1 forms,
    equal-parameter collapse, decomposition formula, and the contiguous
    recurrence family."""
    t0 = time.perf_counter()
    policy = TruncationPolicy(max_total_degree=max_degree, tail_tol=tail_tol)
    rep = VerificationReport("identities", {
        "trials": trials, "seed": seed, "tol": tol,
        "recurrence_tol": recurrence_tol, "tail_tol": tail_tol,
        "max_degree": max_degree,
    })
    rng = random.Random(seed)

    for i in range(trials):
        r = rng.choice((1, 2, 3))
        a = rng.uniform(0.5, 6.0)
        c = rng.uniform(0.5, 6.0)
        raw = [_draw_in_disk(rng, 1.0) for _ in range(r)]
        scale = rng.uniform(0.02, 0.2) / max(sum(abs(v) for v in raw), 1e-12)
        x = tuple(v * scale for v in raw)
        lhs = doubled_index_multisum(a, c, x, policy).value
        rhs = gauss_2f1(a / 2, (a + 1) / 2, c, 4 * sum(x), policy).value
        rep.rows.append(make_row(f"multisum-collapse/{i:04d}", "identities",
                                 {"r": r, "a": a, "c": c, "x": list(x)}, lhs, rhs, tol))

    params = {"i": lambda a: ((a + 1) / 2, (a + 2) / 2, a),
              "ii": lambda a: ((a + 3) / 2, (a + 4) / 2, a + 2),
              "iii": lambda a: ((a + 3) / 2, (a + 4) / 2, a + 3)}
    for variant, param_fn in params.items():
        for i in range(trials):
            a = rng.uniform(0.5, 6.0)
            z = _draw_z_right_halfplane(rng)
            aa, bb, cc = param_fn(a)
            lhs = closed_2f1_family(variant, a, z)
            rhs = gauss_2f1(aa, bb, cc, z, policy).value
            rep.rows.append(make_row(f"closed-2f1-{variant}/{i:04d}", "identities",
                                     {"a": a, "z": z}, lhs, rhs, tol))

    for i in range(trials):
        n = rng.choice((1, 2, 3))
        a = rng.uniform(0.5, 6.0)
        b = tuple(rng.uniform(0.5, 6.0) for _ in range(n))
        raw = [_draw_in_disk(rng, 1.0) for _ in range(n)]
        scale = rng.uniform(0.05, 0.5) / max(sum(abs(v) for v in raw), 1e-12)
        z = tuple(v * scale for v in raw)
        lhs = appell_fa(a, b, b, z, policy).value
        rhs = fa_equal_params_closed(a, z)
        rep.rows.append(make_row(f"equal-param-collapse/{i:04d}", "identities",
                                 {"n": n, "a": a, "b": list(b), "z": list(z)},
                                 lhs, rhs, tol))

    for i in range(trials):
        r = rng.choice((2, 3))
        a = rng.uniform(0.5, 6.0)
        b1 = rng.uniform(0.5, 6.0)
        c1 = rng.uniform(0.5, 6.0)
        shared = rng.uniform(0.5, 6.0)
        y1 = _draw_in_disk(rng, 0.3)
        raw = [_draw_in_disk(rng, 1.0) for _ in range(r - 1)]
        scale = rng.uniform(0.02, 0.3) / max(sum(abs(v) for v in raw), 1e-12)
        y = (y1,) + tuple(v * scale for v in raw)
        lhs = fa_decomposition_rhs(a, b1, c1, y, policy).value
        rhs = appell_fa(a, (b1,) + (shared,) * (r - 1), (c1,) + (shared,) * (r - 1),
                        y, policy).value
        rep.rows.append(make_row(f"decomposition/{i:04d}", "identities",
                                 {"r": r, "a": a, "b1": b1, "c1": c1,
                                  "shared": shared, "y": list(y)}, lhs, rhs, tol))

    # contiguous recurrence family: validated forms gate, rejected displays
    # and the rejected coefficient set are informational
    for i in range(trials):
        a = rng.uniform(0.5, 6.0)
        z = _draw_z_right_halfplane(rng)
        s_iv = gauss_2f1((a + 3) / 2, (a + 4) / 2, a, z, policy).value
        s_v = gauss_2f1((a + 2) / 2, (a + 3) / 2, a, z, policy).value
        rep.rows.append(make_row(f"recurrence-closed-iv/{i:04d}", "identities",
                                 {"a": a, "z": z},
                                 closed_2f1_recurrence("iv", a, z), s_iv, recurrence_tol))
        rep.rows.append(make_row(f"recurrence-closed-v/{i:04d}", "identities",
                                 {"a": a, "z": z},
                                 closed_2f1_recurrence("v", a, z), s_v, recurrence_tol))
        lhs, rhs = contiguous_relation_check(a, z, policy)
        rep.rows.append(make_row(f"recurrence-relation/{i:04d}", "identities",
                                 {"a": a, "z": z}, lhs, rhs, recurrence_tol))
        rep.informational.append(make_row(f"direct-display-iv/{i:04d}", "identities",
                                          {"a": a, "z": z},
                                          closed_2f1_family("iv", a, z), s_iv,
                                          recurrence_tol))
        rep.informational.append(make_row(f"direct-display-v/{i:04d}", "identities",
                                          {"a": a, "z": z},
                                          closed_2f1_family("v", a, z), s_v,
                                          recurrence_tol))
        if i < 50:
            alt_lhs, alt_rhs = contiguous_relation_check(a, z, policy,
                                                         coefficients="alternate")
            rep.informational.append(make_row(
                f"alternate-relation-coefficients/{i:04d}", "identities",
                {"a": a, "z": z}, alt_lhs, alt_rhs, recurrence_tol))

    return _finish(rep, t0)


def run_norm_suite(domain: str = "d2", max_index: int | None = None,
                   tol: float = 1e-8, p: float | None = None,
                   lam: float | None = None) -> VerificationReport:
    """Closed norm formulas against the quadrature oracle, over the full
    admissible index grid."""
    t0 = time.perf_counter()
    rep = VerificationReport("norms", {
        "domain": domain, "max_index": max_index, "tol": tol, "p": p, "lam": lam,
    })
    if domain == "d2":
        max_index = 4 if max_index is None else max_index
        spec = DomainSpec.d2()
        for a2 in range(max_index + 1):
            for a3 in range(max_index + 1):
                for a1 in range(-2 - a2 - a3, 7):
                    alpha = (a1, a2, a3)
                    rep.rows.append(make_row(
                        f"norm-d2/{a1:+03d}_{a2}_{a3}", "norms", {"alpha": list(alpha)},
                        norm_closed(spec, alpha), norm_quadrature(spec, alpha), tol))
    elif domain == "d1":
        max_index = 3 if max_index is None else max_index
        combos = [(p, lam)] if p is not None and lam is not None else \
            list(itertools.product((0.5, 1.0, 2.0, 2.5), (1.0, 2.0, 3.0)))
        for pv, lv in combos:
            spec = DomainSpec.d1(pv, lv)
            for alpha in itertools.product(range(max_index + 1), repeat=4):
                rep.rows.append(make_row(
                    f"norm-d1/p{pv}_l{lv}/{'_'.join(map(str, alpha))}", "norms",
                    {"alpha": list(alpha), "p": pv, "lam": lv},
                    norm_closed(spec, alpha), norm_quadrature(spec, alpha), tol))
    else:
        raise ValueError(f"norm suite supports d1 and d2, got {domain!r}")
    return _finish(rep, t0)


def _hermitian_rows(rep, prefix, pairs, evaluate, tol):
    for i, pr in enumerate(pairs):
        fwd = evaluate(pr)
        rev = evaluate(PointPair(pr.zeta, pr.z))
        rep.rows.append(make_row(f"{prefix}/hermitian/{i:04d}", rep.suite,
                                 {"z": list(pr.z), "zeta": list(pr.zeta)},
                                 fwd, rev.conjugate(), tol))


def _positivity_rows(rep, prefix, points, evaluate, tol):
    for i, z in enumerate(points):
        k = evaluate(diagonal_pair(z))
        reference = complex(k.real, 0.0) if k.real > 0.0 else 0j
        rep.rows.append(make_row(f"{prefix}/diagonal-positive/{i:04d}", rep.suite,
                                 {"z": list(z)}, k, reference, tol))


def run_kernel_suite(domain: str = "d2", p: float | None = None,
                     lam: float | None = None, exponents=(1, 1),
                     points: int = 50, seed: int = 42, margin: float = 0.2,
                     tol: float = 1e-6, tail_tol: float = 1e-10,
                     max_degree: int = 400, hermitian_tol: float = 1e-12,
                     positivity_tol: float = 1e-10,
                     gradient_checks: int = 25) -> VerificationReport:
    """Kernel route agreement plus symmetry, positivity, continuity, and
    (for d1) dual-gradient checks."""
    t0 = time.perf_counter()
    policy = TruncationPolicy(max_total_degree=max_degree, tail_tol=tail_tol)
    rep = VerificationReport("kernels", {
        "domain": domain, "p": p, "lam": lam,
        "exponents": list(exponents) if domain == "ellipsoid" else None,
        "points": points, "seed": seed, "margin": margin, "tol": tol,
        "tail_tol": tail_tol, "max_degree": max_degree,
    })

    if domain == "d2":
        spec = DomainSpec.d2()
        pairs = sample_pairs(spec, seed, points, margin)
        for i, pr in enumerate(pairs):
            closed = kernel_closed_d2_nu(pr.nu).value
            series = kernel_series_d2_nu(pr.nu, policy)
            rep.rows.append(make_row(f"d2/route/{i:04d}", "kernels",
                                     {"nu": list(pr.nu)}, closed, series.value, tol))
        spot_series = kernel_series_d2_nu(D2_SPOT_NU, policy)
        rep.rows.append(make_row("d2/route/spot-quarter", "kernels",
                                 {"nu": list(D2_SPOT_NU)},
                                 kernel_closed_d2_nu(D2_SPOT_NU).value,
                                 spot_series.value, tol))
        _hermitian_rows(rep, "d2", pairs[:points],
                        lambda q: kernel_closed_d2_nu(q.nu).value, hermitian_tol)
        _positivity_rows(rep, "d2", sample_interior(spec, seed + 1, max(points // 2, 1), margin),
                         lambda q: kernel_closed_d2_nu(q.nu).value, positivity_tol)
        # continuity points need |nu1| bounded away from 0: the nu3 derivative
        # scales like 3K/(nu1 - nu3), so tiny nu1 measures conditioning, not
        # evaluator continuity
        rng = random.Random(seed + 2)
        for i in range(20):
            n1 = cmath.rect(rng.uniform(0.1, 0.3), rng.uniform(0.0, 2 * math.pi))
            n2 = _draw_in_disk(rng, 0.03)
            at0 = kernel_closed_d2_nu((n1, n2, 0j)).value
            near = kernel_closed_d2_nu((n1, n2, 1e-8 + 0j)).value
            rep.rows.append(make_row(f"d2/nu3-continuity/{i:04d}", "kernels",
                                     {"nu": [n1, n2]}, near, at0, tol))
        for i, pr in enumerate(pairs[:3]):
            rep.informational.append(make_row(
                f"d2/alternate-numerator/{i:04d}", "kernels", {"nu": list(pr.nu)},
                _kernel_closed_d2_alternate(pr.nu),
                kernel_series_d2_nu(pr.nu, policy).value, tol))
        rep.informational.append(make_row(
            "d2/alternate-numerator/spot-quarter", "kernels",
            {"nu": list(D2_SPOT_NU)}, _kernel_closed_d2_alternate(D2_SPOT_NU),
            spot_series.value, tol))

    elif domain == "d1":
        if p is None or lam is None:
            raise ValueError("kernel suite for d1 needs p and lam")
        spec = DomainSpec.d1(p, lam)
        pairs = sample_pairs(spec, seed, points, margin)
        for i, pr in enumerate(pairs):
            closed = kernel_closed_d1_nu(pr.nu, p, lam).value
            series = kernel_series_d1_nu(pr.nu, p, lam, policy)
            rep.rows.append(make_row(f"d1/route/{i:04d}", "kernels",
                                     {"nu": list(pr.nu)}, closed, series.value, tol))
        _hermitian_rows(rep, "d1", pairs,
                        lambda q: kernel_closed_d1_nu(q.nu, p, lam).value, hermitian_tol)
        _positivity_rows(rep, "d1", sample_interior(spec, seed + 1, max(points // 2, 1), margin),
                         lambda q: kernel_closed_d1_nu(q.nu, p, lam).value, positivity_tol)
        rng = random.Random(seed + 2)
        for i in range(20):
            others = [_draw_in_disk(rng, 0.1) for _ in range(3)]
            at0 = kernel_closed_d1_nu((others[0], others[1], 0j, others[2]), p, lam).value
            near = kernel_closed_d1_nu((others[0], others[1], 1e-8 + 0j, others[2]),
                                       p, lam).value
            rep.rows.append(make_row(f"d1/nu3-continuity/{i:04d}", "kernels",
                                     {"nu": others}, near, at0, tol))
        h = 1e-5
        for i in range(gradient_checks):
            pr = pairs[i % len(pairs)]
            nu = pr.nu
            g = potential_closed_d1(tuple(dual_var(v, j) for j, v in enumerate(nu)), p, lam)
            worst = (0.0, 0j, 0j)
            for j in range(4):
                up, dn = list(nu), list(nu)
                up[j] += h
                dn[j] -= h
                fd = (potential_closed_d1(tuple(up), p, lam)
                      - potential_closed_d1(tuple(dn), p, lam)) / (2 * h)
                err = abs(g.grad[j] - fd) / max(abs(fd), 1e-12)
                if err >= worst[0]:
                    worst = (err, g.grad[j], fd)
            rep.rows.append(make_row(f"d1/gradient-fd/{i:04d}", "kernels",
                                     {"nu": list(nu)}, worst[1], worst[2], tol))
        for i, pr in enumerate(pairs[:3]):
            rep.informational.append(make_row(
                f"d1/alternate-operator-weights/{i:04d}", "kernels",
                {"nu": list(pr.nu)},
                kernel_closed_d1_nu(pr.nu, p, lam,
                                    weights=OperatorWeights.alternate_d1(p, lam)).value,
                kernel_series_d1_nu(pr.nu, p, lam, policy).value, tol))

    elif domain == "ellipsoid":
        exps = tuple(int(e) for e in exponents)
        spec = DomainSpec.ellipsoid(tuple(float(e) for e in exps))
        pairs = sample_pairs(spec, seed, points, margin)
        if exps == (1, 1):
            for i, pr in enumerate(pairs):
                got = kernel_series_ellipsoid_nu(pr.nu, exps, policy).value
                ref = (2.0 / math.pi**2) * (1 - pr.nu[0] - pr.nu[1]) ** -3
                rep.rows.append(make_row(f"ellipsoid/unit-ball-collapse/{i:04d}",
                                         "kernels", {"nu": list(pr.nu)}, got, ref, tol))
        _hermitian_rows(rep, "ellipsoid", pairs[:min(points, 20)],
                        lambda q: kernel_series_ellipsoid_nu(q.nu, exps, policy).value,
                        1e-10)
        _positivity_rows(rep, "ellipsoid",
                         sample_interior(spec, seed + 1, max(points // 2, 1), margin),
                         lambda q: kernel_series_ellipsoid_nu(q.nu, exps, policy).value,
                         positivity_tol)
    else:
        raise ValueError(f"kernel suite supports d1, d2, ellipsoid, got {domain!r}")

    return _finish(rep, t0)
