"""Command-line front end: plot tables, sampling runs and verification reports.

Exit codes
----------
0  success
1  usage error (bad flags, out-of-range parameters)
2  numeric failure (quadrature or eigensolver did not converge)
3  verification failure (KS test or an acceptance check failed)

CSV files start with ``#key=value`` provenance lines, then an ``x,density``
(or ``spacing``) column header and the data.  JSON reports use sorted keys.
Nothing time-dependent is written, so identical arguments give identical
bytes.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

import numpy as np

from . import __version__, analysis, chebfit, ensemble, oracle, transition, verify
from .params import AlphaVec, DomainError, NumericFailure, Scale, TransitionKind, ZMode
from .surmise import surmise_cdf

SEED_ENV = "TRANSPACING_SEED"
DEFAULT_GRID = "0:5:0.01"

EXIT_OK, EXIT_USAGE, EXIT_NUMERIC, EXIT_VERIFY = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# ---------------------------------------------------------------------------
# output helpers


def _fmt(v) -> str:
    return repr(float(v))


def _provenance(args) -> dict:
    config = {k: v for k, v in sorted(vars(args).items()) if k not in ("func", "output", "summary")}
    return {
        "command": args.command,
        "config": json.dumps(config, sort_keys=True, separators=(",", ":")),
        "seed": "" if getattr(args, "seed", None) is None else str(args.seed),
        "version": __version__,
    }


def csv_text(meta: dict, columns: list[str], data) -> str:
    lines = [f"#{k}={v}" for k, v in meta.items()]
    lines.append(",".join(columns))
    for row in data:
        lines.append(",".join(_fmt(v) for v in np.atleast_1d(row)))
    return "\n".join(lines) + "\n"


def json_text(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, default=_json_default) + "\n"


def _json_default(o):
    if isinstance(o, np.generic):
        return o.item()
    if isinstance(o, np.ndarray):
        return o.tolist()
    raise TypeError(f"cannot serialise {type(o).__name__}")


def _emit(text: str, path: str | None):
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


# ---------------------------------------------------------------------------
# argument helpers


def _alpha(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")
    if not 0.0 <= v <= 1.0:
        raise argparse.ArgumentTypeError(f"alpha must lie in [0, 1], got {v}")
    return v


def _alpha_list(text: str) -> list[float]:
    return [_alpha(t) for t in text.split(",") if t.strip()]


def _positive_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be at least 1, got {v}")
    return v


def _seed(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"seed must be an integer: {text!r}")
    if v < 0:
        raise argparse.ArgumentTypeError("seed must be non-negative")
    return v


def _default_seed() -> int:
    env = os.environ.get(SEED_ENV)
    if env is None:
        return 0
    try:
        return _seed(env)
    except argparse.ArgumentTypeError as exc:
        raise UsageError(f"{SEED_ENV}: {exc}")


def family_of(avec: AlphaVec) -> tuple[TransitionKind, float] | None:
    """The one-parameter family (and alpha) containing ``avec``, if any."""
    a1, a2, a3 = avec.as_tuple()
    if a1 == 1.0 and a3 == 0.0:
        return TransitionKind.GUE_GINIBRE, a2
    if a1 == 1.0 and a2 == 1.0:
        return TransitionKind.GINIBRE_GSE, a3
    if a1 == a2 and a3 == 0.0:
        return TransitionKind.GOE_GINIBRE, a1
    return None


def _unit_mean_cdf(kind: TransitionKind, alpha: float):
    if kind is TransitionKind.GOE_GINIBRE:
        m = transition.mean(kind, alpha)
        return lambda r: transition.cdf_goe_ginibre(m * np.asarray(r), alpha)
    return analysis.cdf_from_pdf(lambda r: transition.pdf_normalized(kind, r, alpha), upper=6.0)


# ---------------------------------------------------------------------------
# commands


def cmd_pdf(args) -> int:
    if args.surmise is not None:
        targets = [(args.surmise, None)]
    else:
        if args.transition is None:
            raise UsageError("pdf needs --transition or --surmise")
        alphas = args.alphas if args.alphas else ([args.alpha] if args.alpha is not None else None)
        if not alphas:
            raise UsageError("pdf --transition needs --alpha or --alphas")
        targets = [(TransitionKind(args.transition), a) for a in alphas]

    texts = []
    for kind, alpha in targets:
        table = transition.pdf_table(
            kind, alpha, args.grid, Scale(args.scale), ZMode(args.z_mode), renormalize=args.renormalize
        )
        meta = {**table.metadata(), **_provenance(args)}
        if args.format == "json":
            texts.append({"metadata": meta, "x": table.x, "density": table.density})
        else:
            texts.append(csv_text(meta, ["x", "density"], np.column_stack([table.x, table.density])))

    if args.format == "json":
        _emit(json_text(texts if len(texts) > 1 else texts[0]), args.output)
        return EXIT_OK
    if len(texts) == 1 or args.output in (None, "-"):
        _emit("\n".join(texts), args.output)
        return EXIT_OK
    # several curves to a file path: one file per alpha next to the given stem
    out = Path(args.output)
    for (kind, alpha), text in zip(targets, texts):
        out.with_name(f"{out.stem}_a{alpha:g}{out.suffix or '.csv'}").write_text(text)
    return EXIT_OK


def cmd_mean(args) -> int:
    if args.alpha_vec is not None:
        avec = AlphaVec.parse(args.alpha_vec)
        fam = family_of(avec)
        quad = oracle.mean_numeric(avec)
        closed = transition.mean(*fam) if fam else None
        kind = fam[0].value if fam else "general"
        alpha = fam[1] if fam else None
    else:
        if args.transition is None or args.alpha is None:
            raise UsageError("mean needs --transition with --alpha, or --alpha-vec")
        k = TransitionKind(args.transition)
        alpha = args.alpha
        closed = transition.mean(k, alpha)
        if 0.0 < alpha < 1.0:
            quad = oracle.mean_numeric(k, alpha)
        else:
            quad = oracle.mean_numeric(k.alpha_vec(alpha))
        kind = k.value
        avec = k.alpha_vec(alpha)
    report = {
        "kind": kind,
        "alpha": alpha,
        "alpha_vec": list(avec.as_tuple()),
        "mean_closed_form": closed,
        "mean_quadrature": quad,
        "abs_diff": None if closed is None else abs(closed - quad),
        "version": __version__,
    }
    _emit(json_text(report), args.output)
    return EXIT_OK


def _resolve_alpha_vec(args) -> AlphaVec:
    if args.alpha_vec is not None:
        return AlphaVec.parse(args.alpha_vec)
    if args.transition is None or args.alpha is None:
        raise UsageError("need --alpha-vec, or --transition with --alpha")
    return TransitionKind(args.transition).alpha_vec(args.alpha)


def cmd_sample(args) -> int:
    avec = _resolve_alpha_vec(args)
    samples = ensemble.run_ensemble(avec, args.n, args.seed, ensemble.Method(args.method), args.workers)
    fam = family_of(avec)
    analytic = transition.mean(*fam) if fam else oracle.mean_numeric(avec)
    summary = {
        "alpha_vec": list(avec.as_tuple()),
        "n": samples.count,
        "seed": args.seed,
        "method": args.method,
        "empirical_mean": samples.mean(),
        "analytic_mean": analytic,
        "version": __version__,
    }
    if fam is not None:
        rep = analysis.ks_statistic(samples, _unit_mean_cdf(*fam), scale=analytic)
        summary["ks"] = {**rep.to_dict(), "family": fam[0].value, "alpha": fam[1], "scaling": "analytic-mean"}
    meta = {"alpha_vec": str(avec), "method": args.method, **_provenance(args)}
    _emit(csv_text(meta, ["spacing"], samples.spacings), args.output)
    summary_text = json_text(summary)
    if args.summary:
        Path(args.summary).write_text(summary_text)
    else:
        sys.stderr.write(summary_text)
    return EXIT_OK


def cmd_compare(args) -> int:
    if args.transition is None or args.alpha is None:
        raise UsageError("compare needs --transition and --alpha")
    kind = TransitionKind(args.transition)
    model = TransitionKind(args.against) if args.against else kind
    model_alpha = args.against_alpha if args.against_alpha is not None else args.alpha
    samples = ensemble.run_ensemble(kind.alpha_vec(args.alpha), args.n, args.seed)
    if args.empirical_mean:
        scale, scaling = samples.mean(), "empirical-mean"
    else:
        scale, scaling = transition.mean(kind, args.alpha), "analytic-mean"
    threshold = args.ks_threshold if args.ks_threshold is not None else analysis.default_ks_threshold(args.n)
    rep = analysis.ks_statistic(samples, _unit_mean_cdf(model, model_alpha), threshold, scale)
    report = {
        **rep.to_dict(),
        "sampled": {"kind": kind.value, "alpha": args.alpha},
        "model": {"kind": model.value, "alpha": model_alpha},
        "scaling": scaling,
        "scale": scale,
        "seed": args.seed,
        "version": __version__,
    }
    _emit(json_text(report), args.output)
    return EXIT_OK if rep.passed else EXIT_VERIFY


def cmd_fit(args) -> int:
    fit = chebfit.refit(args.order, args.points, convention=chebfit.Convention(args.convention), weighting=args.weighting)
    rep = chebfit.validate_fit(fit)
    winner, published = chebfit.arbitrate()
    report = {
        "order": fit.order,
        "points": args.points,
        "coefficients": fit.to_dict(),
        "report": rep.to_dict(),
        "published_set": {
            "coefficients": list(chebfit.PUBLISHED_VALUES),
            "winning_convention": winner.value,
            "reports": {c.value: r.to_dict() for c, r in published.items()},
        },
        "version": __version__,
    }
    _emit(json_text(report), args.output)
    return EXIT_OK


def cmd_check(args) -> int:
    results = verify.run_suite(args.suite)
    for r in results:
        sys.stderr.write(r.line() + "\n")
    failed = [r.name for r in results if not r.passed]
    report = {
        "suite": args.suite,
        "passed": not failed,
        "failures": failed,
        "results": [r.to_dict() for r in results],
        "version": __version__,
    }
    _emit(json_text(report), args.output)
    return EXIT_OK if not failed else EXIT_VERIFY


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    kinds = [k.value for k in TransitionKind]
    p = _Parser(prog="transpacing", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    def common(sp):
        sp.add_argument("--output", "-o", default=None, help="output file (default stdout)")

    sp = sub.add_parser("pdf", help="tabulate a density on a grid")
    sel = sp.add_mutually_exclusive_group()
    sel.add_argument("--transition", choices=kinds)
    sel.add_argument("--surmise", type=int, choices=[1, 2, 3, 4])
    sp.add_argument("--alpha", type=_alpha)
    sp.add_argument("--alphas", type=_alpha_list, help="comma-separated list, one curve each")
    sp.add_argument("--grid", default=DEFAULT_GRID, help="start:stop:step, stop inclusive")
    sp.add_argument("--scale", choices=[s.value for s in Scale], default=Scale.UNIT_MEAN_R.value)
    sp.add_argument("--z-mode", choices=[z.value for z in ZMode], default=ZMode.EXACT_QUADRATURE.value)
    sp.add_argument("--renormalize", action="store_true", help="renormalise the Chebyshev-mode density")
    sp.add_argument("--format", choices=["csv", "json"], default="csv")
    common(sp)
    sp.set_defaults(func=cmd_pdf)

    sp = sub.add_parser("mean", help="closed-form mean next to its quadrature value")
    sp.add_argument("--transition", choices=kinds)
    sp.add_argument("--alpha", type=_alpha)
    sp.add_argument("--alpha-vec", help="a1,a2,a3")
    common(sp)
    sp.set_defaults(func=cmd_mean)

    sp = sub.add_parser("sample", help="draw spacings from the matrix model")
    sp.add_argument("--alpha-vec", help="a1,a2,a3")
    sp.add_argument("--transition", choices=kinds)
    sp.add_argument("--alpha", type=_alpha)
    sp.add_argument("--n", type=_positive_int, default=100_000)
    sp.add_argument("--seed", type=_seed, default=None, help=f"default from ${SEED_ENV}, else 0")
    sp.add_argument("--method", choices=[m.value for m in ensemble.Method], default="formula")
    sp.add_argument("--workers", type=_positive_int, default=1)
    sp.add_argument("--summary", help="write the JSON summary here instead of stderr")
    common(sp)
    sp.set_defaults(func=cmd_sample)

    sp = sub.add_parser("compare", help="KS test of sampled spacings against a closed form")
    sp.add_argument("--transition", choices=kinds)
    sp.add_argument("--alpha", type=_alpha)
    sp.add_argument("--against", choices=kinds, help="model family (default: the sampled one)")
    sp.add_argument("--against-alpha", type=_alpha)
    sp.add_argument("--n", type=_positive_int, default=1_000_000)
    sp.add_argument("--seed", type=_seed, default=None)
    sp.add_argument("--ks-threshold", type=float, default=None, help="default 5/sqrt(n)")
    sp.add_argument("--empirical-mean", action="store_true", help="unfold by the sample mean")
    common(sp)
    sp.set_defaults(func=cmd_compare)

    sp = sub.add_parser("fit", help="least-squares Chebyshev fit of the angular function")
    sp.add_argument("--order", type=_positive_int, default=6)
    sp.add_argument("--points", type=_positive_int, default=512)
    sp.add_argument("--convention", choices=[c.value for c in chebfit.Convention], default="direct")
    sp.add_argument("--weighting", choices=["z", "g"], default="z")
    common(sp)
    sp.set_defaults(func=cmd_fit)

    sp = sub.add_parser("check", help="run verification suites")
    sp.add_argument("--suite", choices=["all", *verify.SUITES], default="all")
    common(sp)
    sp.set_defaults(func=cmd_check)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if hasattr(args, "seed") and args.seed is None:
            args.seed = _default_seed()
        return args.func(args)
    except UsageError as exc:
        sys.stderr.write(f"transpacing: error: {exc}\n")
        return EXIT_USAGE
    except DomainError as exc:
        sys.stderr.write(f"transpacing: error: {exc}\n")
        return EXIT_USAGE
    except (NumericFailure, oracle.QuadratureError, analysis.IntegrityError) as exc:
        sys.stderr.write(f"transpacing: numeric failure: {exc}\n")
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
