"""Verification suites behind ``transpacing check`` and the acceptance tests.

Each check returns a :class:`CheckResult` with the measured quantity, the
threshold it was held to, and whether it passed.  The special-function
suite uses slow reference implementations written here (positive-term
series, the arithmetic-geometric mean, adaptive quadrature) so that it does
not lean on the library routines it audits.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize_scalar

from . import analysis, chebfit, ensemble, oracle, specfun, transition
from .params import AlphaVec, TransitionKind, ZMode
from .surmise import surmise_pdf, surmise_peak

ALPHA_GRID = np.round(np.arange(1, 20) * 0.05, 10)
S_GRID = np.round(np.arange(1, 81) * 0.1, 10)
MC_ALPHAS = (0.25, 0.5, 0.75)

# Exact endpoint means and their customary 8-significant-digit approximations
# (accurate to 1e-7, not all correctly rounded).
ENDPOINT_MEANS = {
    "goe": (math.sqrt(2 * math.pi), 2.5066283),
    "gue": (4 * math.sqrt(2) / math.sqrt(math.pi), 3.1915383),
    "ginibre": (1.5 * math.sqrt(2 * math.pi), 3.7599424),
    "gse": (32 / (3 * math.sqrt(2 * math.pi)), 4.2553842),
}


@dataclass
class CheckResult:
    name: str
    passed: bool
    value: float
    threshold: float
    detail: dict = field(default_factory=dict)
    seconds: float = 0.0

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] {self.name}: {self.value:.3e} (threshold {self.threshold:.3e}, {self.seconds:.1f}s)"

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "pass": bool(self.passed),
            "value": float(self.value),
            "threshold": float(self.threshold),
            "seconds": round(self.seconds, 3),
            **{k: v for k, v in self.detail.items()},
        }


def _timed(fn):
    def wrapper(*args, **kwargs):
        t0 = time.perf_counter()
        res = fn(*args, **kwargs)
        for r in res if isinstance(res, list) else [res]:
            r.seconds = time.perf_counter() - t0
        return res

    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


# ---------------------------------------------------------------------------
# reference implementations for the kernel audit


def ref_i_scaled(n: int, x: float) -> float:
    """``exp(-x) I_n(x)`` by its power series, summed in log space."""
    if x == 0.0:
        return 1.0 if n == 0 else 0.0
    half = 0.5 * x
    terms = []
    k = 0
    while True:
        lt = (2 * k + n) * math.log(half) - math.lgamma(k + 1) - math.lgamma(k + n + 1) - x
        terms.append(lt)
        if k > half and lt < max(terms) - 40:
            break
        k += 1
    top = max(terms)
    return math.exp(top) * math.fsum(math.exp(t - top) for t in terms)


def ref_elliptic_k(m: float) -> float:
    a, b = 1.0, math.sqrt(1.0 - m)
    for _ in range(40):
        if abs(a - b) <= 4e-16 * a:
            break
        a, b = 0.5 * (a + b), math.sqrt(a * b)
    return math.pi / (2.0 * a)


def ref_elliptic_e(m: float) -> float:
    spec = oracle.QuadratureSpec(abs_tol=1e-15, rel_tol=1e-14)
    v, _ = oracle.integrate_1d(lambda t: np.sqrt(1.0 - m * np.sin(t) ** 2), 0.0, math.pi / 2, spec)
    return v


def ref_erf(x: float) -> float:
    """``erf`` from the all-positive series ``2/sqrt(pi) e^{-x^2} sum (2x^2)^k x / (2k+1)!!``."""
    if x < 0:
        return -ref_erf(-x)
    if x > 6.0:
        return 1.0
    term = x
    terms = [term]
    k = 0
    while term > 1e-18 * terms[0] or k < 2 * x * x:
        k += 1
        term *= 2.0 * x * x / (2 * k + 1)
        terms.append(term)
    return 2.0 / math.sqrt(math.pi) * math.exp(-x * x) * math.fsum(terms)


def ref_gamma(x: float) -> float:
    """Gamma by recurrence down to (0, 1] and Stirling with a shift of 20."""
    shift = 20
    z = x + shift
    series = 1 / (12 * z) - 1 / (360 * z**3) + 1 / (1260 * z**5) - 1 / (1680 * z**7) + 1 / (1188 * z**9)
    log_g = (z - 0.5) * math.log(z) - z + 0.5 * math.log(2 * math.pi) + series
    log_g -= math.fsum(math.log(x + k) for k in range(shift))
    return math.exp(log_g)


def _rel(a, b):
    return abs(a - b) / abs(b) if b != 0 else abs(a - b)


@_timed
def check_specfun() -> list[CheckResult]:
    """Kernel accuracy against the slow references, plus the Legendre relation."""
    xs = [0.0, 1e-6, 0.01, 0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 30.0, 100.0, 700.0]
    err_i0 = max(_rel(specfun.bessel_i0_scaled(x), ref_i_scaled(0, x)) for x in xs)
    err_i1 = max(_rel(specfun.bessel_i1_scaled(x), ref_i_scaled(1, x)) for x in xs if x > 0)
    ms = [0.0, 0.01, 0.1, 0.3, 0.5, 0.7, 0.9, 0.99, 0.999999]
    err_k = max(_rel(specfun.elliptic_k(m), ref_elliptic_k(m)) for m in ms)
    err_e = max(_rel(specfun.elliptic_e(m), ref_elliptic_e(m)) for m in ms + [1.0])
    ex = [-4.0, -1.0, -0.3, 1e-8, 0.1, 0.5, 1.0, 2.0, 3.5, 5.0]
    err_erf = max(_rel(specfun.erf(x), ref_erf(x)) for x in ex)
    gx = [0.1, 0.5, 1.0, 1.5, 2.5, 3.0, 7.3, 20.0]
    err_g = max(_rel(specfun.gamma_fn(x), ref_gamma(x)) for x in gx)
    ys = np.linspace(-1, 1, 41)
    err_t = max(
        float(np.max(np.abs(specfun.chebyshev_t(n, ys) - np.cos(n * np.arccos(ys))))) for n in range(13)
    )
    legendre = 0.0
    for m in np.round(np.arange(1, 10) * 0.1, 10):
        K, Kp = specfun.elliptic_k(m), specfun.elliptic_k(1 - m)
        E, Ep = specfun.elliptic_e(m), specfun.elliptic_e(1 - m)
        legendre = max(legendre, abs(E * Kp + Ep * K - K * Kp - math.pi / 2))
    out = []
    for name, val in [
        ("bessel_i0_scaled", err_i0),
        ("bessel_i1_scaled", err_i1),
        ("elliptic_k", err_k),
        ("elliptic_e", err_e),
        ("erf", err_erf),
        ("gamma_fn", err_g),
        ("chebyshev_t", err_t),
        ("legendre_relation", legendre),
    ]:
        out.append(CheckResult(f"specfun/{name}", val <= 1e-12, val, 1e-12))
    return out


# ---------------------------------------------------------------------------
# closed forms vs the raw integrals


@_timed
def check_oracle(tol: float = 1e-8) -> list[CheckResult]:
    """Closed-form densities against quadrature of the defining integrals."""
    S, A = np.meshgrid(S_GRID, ALPHA_GRID)
    out = []
    for kind in TransitionKind:
        ref = oracle.pdf_integral(kind, S, A)
        cf = np.array([transition.pdf(kind, S_GRID, a, ZMode.EXACT_QUADRATURE) for a in ALPHA_GRID])
        err = float(np.max(np.abs(cf / ref - 1.0)))
        out.append(CheckResult(f"oracle/{kind.value}", err <= tol, err, tol, {"points": int(S.size)}))
    return out


@_timed
def check_means(tol: float = 1e-8, endpoint_tol: float = 1e-9) -> list[CheckResult]:
    """Exact means against the integral of s F(s), and the endpoint constants."""
    out = []
    for kind in TransitionKind:
        num = oracle.mean_numeric(kind, ALPHA_GRID)
        cf = np.array([transition.mean(kind, a) for a in ALPHA_GRID])
        err = float(np.max(np.abs(num - cf)))
        out.append(CheckResult(f"means/{kind.value}", err <= tol, err, tol))
    got = {
        "goe": transition.mean_goe_ginibre(0.0),
        "gue": transition.mean_gue_ginibre(0.0),
        "ginibre": transition.mean_gue_ginibre(1.0),
        "gse": transition.mean_ginibre_gse(1.0),
    }
    for name, (exact, quoted) in ENDPOINT_MEANS.items():
        err = abs(got[name] - exact)
        # the quoted 7-digit decimals are reported, not asserted: two of them
        # are not correctly rounded, so the exact expression is the target
        detail = {"value": got[name], "quoted": quoted, "minus_quoted": got[name] - quoted}
        out.append(CheckResult(f"means/endpoint-{name}", err <= endpoint_tol, err, endpoint_tol, detail))
    return out


@_timed
def check_endpoints(tol: float = 1e-9, vertex_mean_tol: float = 1e-10) -> list[CheckResult]:
    """Unit-mean endpoint densities against the four surmises."""
    r = np.linspace(0.0, 5.0, 2001)
    out = []
    for kind in TransitionKind:
        for alpha, beta in zip((0.0, 1.0), kind.endpoint_betas):
            dens = np.asarray(transition.pdf_normalized(kind, r, alpha))
            err = float(np.max(np.abs(dens - np.asarray(surmise_pdf(beta, r)))))
            out.append(CheckResult(f"endpoints/{kind.value}@{alpha:g}->beta{beta}", err <= tol, err, tol))
    vertex = [
        (TransitionKind.GUE_GINIBRE, 1.0),
        (TransitionKind.GINIBRE_GSE, 0.0),
        (TransitionKind.GOE_GINIBRE, 1.0),
    ]
    means = [transition.mean(k, a) for k, a in vertex]
    spread = max(means) - min(means)
    out.append(CheckResult("endpoints/ginibre-vertex-mean", spread <= vertex_mean_tol, spread, vertex_mean_tol))
    curves = [np.asarray(transition.pdf_normalized(k, r, a)) for k, a in vertex]
    sup = max(float(np.max(np.abs(c - curves[0]))) for c in curves[1:])
    out.append(CheckResult("endpoints/ginibre-vertex-sup", sup <= tol, sup, tol))
    return out


@_timed
def check_chebyshev(claim: float = 0.01) -> list[CheckResult]:
    """Published coefficients and an order-6 refit against quadrature of Z."""
    winner, reports = chebfit.arbitrate()
    rep = reports[winner]
    detail = {c.value: r.to_dict() for c, r in reports.items()}
    detail["winner"] = winner.value
    out = [CheckResult("chebyshev/published-coefficients", rep.passes, rep.best_reading, claim, detail)]
    fit = chebfit.refit(6, 512, convention=winner)
    frep = chebfit.validate_fit(fit)
    out.append(
        CheckResult(
            "chebyshev/refit-order-6",
            frep.passes,
            frep.best_reading,
            claim,
            {"coefficients": list(fit.a), **frep.to_dict()},
        )
    )
    return out


def _transition_cdf(kind, alpha):
    def pdf_r(r):
        return transition.pdf_normalized(kind, r, alpha, ZMode.EXACT_QUADRATURE)

    return analysis.cdf_from_pdf(pdf_r, upper=6.0, n_cells=600)


@_timed
def check_montecarlo(
    kinds=tuple(TransitionKind),
    alphas=MC_ALPHAS,
    n: int = 1_000_000,
    seed: int = 20240611,
    ks_threshold: float = 0.005,
    pair_tol: float = 1e-10,
    matrix_n: int | None = None,
) -> list[CheckResult]:
    """KS of sampled spacings, per-draw formula/matrix identity, degeneracy."""
    matrix_n = n if matrix_n is None else matrix_n
    out = []
    for kind in kinds:
        for alpha in alphas:
            avec = kind.alpha_vec(alpha)
            tag = f"{kind.value}@{alpha:g}"
            samples = ensemble.run_ensemble(avec, n, seed, ensemble.Method.FORMULA)
            cdf = _transition_cdf(kind, alpha)
            rep = analysis.ks_statistic(samples, cdf, ks_threshold, scale=transition.mean(kind, alpha))
            out.append(CheckResult(f"montecarlo/ks/{tag}", rep.passed, rep.statistic, ks_threshold, {"n": n}))

            pair_err = 0.0
            degen = 0.0
            for start in range(0, matrix_n, ensemble.CHUNK_SIZE):
                k = start // ensemble.CHUNK_SIZE
                m = min(ensemble.CHUNK_SIZE, matrix_n - start)
                draw = ensemble.draw_chunk(seed, k, m)
                levels = ensemble.eigen4(ensemble.build_matrix(draw, avec))
                s_mat = ensemble.spacing_from_levels(levels)
                pair_err = max(pair_err, float(np.max(np.abs(s_mat - samples.spacings[start:start + m]))))
                degen = max(
                    degen,
                    float(np.max(levels[:, 1] - levels[:, 0])),
                    float(np.max(levels[:, 3] - levels[:, 2])),
                )
            out.append(CheckResult(f"montecarlo/formula-vs-matrix/{tag}", pair_err <= pair_tol, pair_err, pair_tol, {"n": matrix_n}))
            out.append(CheckResult(f"montecarlo/degeneracy/{tag}", degen <= pair_tol, degen, pair_tol, {"n": matrix_n}))
    return out


def numeric_peak(f, lo=0.05, hi=3.0):
    r = np.linspace(lo, hi, 600)
    v = np.asarray(f(r))
    i = int(np.argmax(v))
    a, b = r[max(i - 1, 0)], r[min(i + 1, r.size - 1)]
    res = minimize_scalar(lambda x: -float(f(x)), bounds=(a, b), method="bounded", options={"xatol": 1e-12})
    return float(res.x), float(-res.fun)


@_timed
def check_peak(expected: float = 1.163, tol: float = 0.01) -> CheckResult:
    """Peak height ratio of the Ginibre and GUE ends of the first family."""
    kind = TransitionKind.GUE_GINIBRE
    _, hi = numeric_peak(lambda r: transition.pdf_normalized(kind, r, 1.0))
    _, lo = numeric_peak(lambda r: transition.pdf_normalized(kind, r, 0.0))
    ratio = hi / lo
    exact = surmise_peak(3)[1] / surmise_peak(2)[1]
    detail = {
        "peak_alpha1": hi,
        "peak_alpha0": lo,
        "ratio": ratio,
        "closed_form_ratio": exact,
        "deviation_from_20pct": ratio - 1.2,
    }
    err = abs(ratio - expected)
    return CheckResult("peak/gue-ginibre-ratio", err <= tol, err, tol, detail)


@_timed
def check_small_s(s0: float = 1e-4, tol: float = 1e-3, slope_tol: float = 0.01) -> list[CheckResult]:
    """Leading small-s coefficients and the linear GOE start."""
    out = []
    for alpha in MC_ALPHAS:
        targets = {
            TransitionKind.GUE_GINIBRE: 1 / (32 * alpha),
            TransitionKind.GINIBRE_GSE: 1 / (48 * math.sqrt(2 * math.pi) * alpha),
            TransitionKind.GOE_GINIBRE: 1 / (32 * alpha**2),
        }
        for kind, target in targets.items():
            got = transition.pdf(kind, s0, alpha) / s0 ** (kind.small_s_power)
            err = abs(got / target - 1)
            out.append(CheckResult(f"small-s/{kind.value}@{alpha:g}", err <= tol, err, tol))
    s = np.geomspace(1e-3, 1e-2, 25)
    f = np.asarray(transition.pdf_goe_ginibre(s, 0.0))
    slope = float(np.polyfit(np.log(s), np.log(f), 1)[0])
    err = abs(slope - 1.0)
    out.append(CheckResult("small-s/goe-ginibre@0-slope", err <= slope_tol, err, slope_tol, {"slope": slope}))
    return out


SUITES = {
    "specfun": check_specfun,
    "oracle": check_oracle,
    "means": check_means,
    "endpoints": check_endpoints,
    "chebyshev": check_chebyshev,
    "montecarlo": check_montecarlo,
    "peak": check_peak,
    "small-s": check_small_s,
}


def run_suite(name: str = "all") -> list[CheckResult]:
    names = list(SUITES) if name == "all" else [name]
    results = []
    for n in names:
        if n not in SUITES:
            raise KeyError(n)
        res = SUITES[n]()
        results.extend(res if isinstance(res, list) else [res])
    return results
