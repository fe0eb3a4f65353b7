"""``hcl``: seeded checks of the operator toolkit with JSON (or CSV) reports.

Exit codes: 0 all checks pass, 1 property violation, 2 input error,
3 numerical failure.  ``HCL_SEED`` overrides the default seed; reports are
identical for identical arguments and seed apart from ``timestamp``.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from datetime import datetime, timezone
from math import comb

import numpy as np

from . import compound as cmp
from . import pogorelov as pg
from .calculus import fd_hessian
from .certify import PROPERTIES, certify
from .embedding import hessian_identity_residual
from .fields import field_catalog, get_field
from .linalg import EigenConvergenceError, det, eigvalsh, load_matrix, matrix_to_json
from .mollifier import t_eps
from .operators import (
    determinant_operator,
    interpolated2d_operator,
    ma_k_operator,
    p_threshold,
    sigma_k_operator,
)
from .polynomials import ma_k
from .sampling import make_rng, resolve_seed

EXIT_OK, EXIT_VIOLATION, EXIT_INPUT, EXIT_NUMERIC = 0, 1, 2, 3

# default property set for `verify`; the rest are opt-in
DEFAULT_PROPS = ("maclaurin", "comparison", "garding", "concavity", "jensen", "schur")


class InputError(Exception):
    pass


def _envelope(command, params, seed, results, witnesses=None):
    return {
        "command": command,
        "parameters": params,
        "seed": seed,
        "timestamp": datetime.now(timezone.utc).isoformat(),
        "results": results,
        "witnesses": witnesses or {},
    }


def _emit(obj, out):
    text = json.dumps(obj, indent=2, sort_keys=True, default=_default)
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _default(x):
    if isinstance(x, np.ndarray):
        return x.tolist()
    if isinstance(x, (np.floating, np.integer, np.bool_)):
        return x.item()
    if isinstance(x, complex):
        return {"re": x.real, "im": x.imag}
    raise TypeError(f"not serializable: {type(x)}")


# -- compound ---------------------------------------------------------------

COMPOUND_TOL = 1e-8


def cmd_compound(args):
    try:
        a = load_matrix(args.matrix)
    except (OSError, json.JSONDecodeError, ValueError) as exc:
        raise InputError(f"cannot read matrix: {exc}") from exc
    n = a.shape[0]
    if not 1 <= args.k <= n:
        raise InputError(f"k must satisfy 1 <= k <= {n}, got {args.k}")
    d = cmp.build_compound(a, args.k)
    spec_res = cmp.compound_spectrum_residual(a, args.k)
    via_det = cmp.mak_via_determinant(a, args.k)
    via_spec = ma_k(eigvalsh(a), args.k)
    det_rel = abs(via_det - via_spec) / max(abs(via_spec), 1e-300)
    scale = 1.0 + float(np.linalg.norm(a))
    ok = spec_res <= COMPOUND_TOL * scale and (det_rel <= COMPOUND_TOL or abs(via_det - via_spec) <= COMPOUND_TOL * scale)
    results = {
        "compound": matrix_to_json(d),
        "basis": [list(i) for i in cmp.compound_basis(n, args.k)],
        "spectrum_residual": spec_res,
        "mak_via_determinant": via_det,
        "mak_via_spectrum": float(via_spec),
        "determinant_relative_residual": det_rel,
        "passed": bool(ok),
    }
    report = _envelope("compound", {"matrix": args.matrix, "k": args.k}, None, results)
    return report, EXIT_OK if ok else EXIT_NUMERIC


# -- verify -----------------------------------------------------------------


def _build_operator(args):
    n, k = args.n, args.k
    if args.op == "interp2d":
        if not 0.0 <= args.s < 1.0:
            raise InputError("--s must lie in [0, 1)")
        return interpolated2d_operator(args.s)
    if n is None or n < 1:
        raise InputError("--n is required and must be positive")
    if args.op == "det":
        return determinant_operator(n)
    if k is None or not 1 <= k <= n:
        raise InputError(f"--k must satisfy 1 <= k <= n for --op {args.op}")
    return sigma_k_operator(n, k) if args.op == "sigmak" else ma_k_operator(n, k)


def _props(spec):
    if spec is None:
        return list(DEFAULT_PROPS)
    names = [p for chunk in spec for p in chunk.split(",") if p]
    if names == ["all"]:
        return sorted(PROPERTIES)
    bad = [p for p in names if p not in PROPERTIES]
    if bad:
        raise InputError(f"unknown properties {bad}; choose from {sorted(PROPERTIES)} or 'all'")
    return names


def cmd_verify(args):
    op = _build_operator(args)
    props = _props(args.prop)
    if args.samples < 1:
        raise InputError("--samples must be positive")
    seed = resolve_seed(args.seed)
    results, witnesses = [], {}
    for prop in props:
        # one stream per property so adding a property does not shift the others
        rng = np.random.default_rng([seed, sorted(PROPERTIES).index(prop)])
        cert = certify(op, prop, args.samples, rng)
        row = cert.to_json()
        witnesses[prop] = row.pop("witness")
        results.append(row)
    params = {"op": args.op, "n": op.n, "k": args.k, "s": args.s, "properties": props, "samples": args.samples}
    report = _envelope("verify", params, seed, results, witnesses)
    return report, EXIT_OK if all(r["passed"] for r in results) else EXIT_VIOLATION


# -- pogorelov --------------------------------------------------------------

SPECTRUM_TOL = 1e-8
FD_TOL = 1e-5
EXPONENT_TOL = 0.01


def _pogorelov_points(params, count, rng):
    m, n = params.m, params.n
    zp = rng.normal(size=(count, m)) + 1j * rng.normal(size=(count, m))
    zp *= (rng.uniform(0.0, 2.0, count) / np.linalg.norm(zp, axis=1))[:, None]
    zs = rng.normal(size=(count, n - m)) + 1j * rng.normal(size=(count, n - m))
    zs *= (rng.uniform(0.1, 2.0, count) / np.linalg.norm(zs, axis=1))[:, None]
    return np.concatenate([zp, zs], axis=1)


def pogorelov_report(params: pg.PogorelovParams, points: int, rng) -> dict:
    """Cross-check residuals of the closed forms at random points off ``z'' = 0``."""
    worst = {"spectrum": 0.0, "det_closed_vs_lu": 0.0, "det_closed_vs_product": 0.0, "fd_hessian": 0.0, "trace": 0.0}
    where = {}
    field = lambda w: pg.u_value(params, w)  # noqa: E731
    for z in _pogorelov_points(params, points, rng):
        h = pg.analytic_hessian(params, z)
        lam = eigvalsh(h)
        closed = pg.closed_form_spectrum(params, z)
        dc = pg.det_closed_form(params, z)
        errs = {
            "spectrum": float(np.max(np.abs(lam - closed)) / np.max(np.abs(closed))),
            "det_closed_vs_lu": abs(det(h).real - dc) / abs(dc),
            "det_closed_vs_product": abs(float(np.prod(closed)) - dc) / abs(dc),
            "fd_hessian": float(np.max(np.abs(fd_hessian(field, z, 1e-4) - h)) / np.max(np.abs(h))),
            "trace": abs(float(np.trace(h).real) - pg.trace_closed_form(params, z)) / abs(pg.trace_closed_form(params, z)),
        }
        for key, val in errs.items():
            if val >= worst[key]:
                worst[key] = val
                where[key] = z
    return {"residuals": worst, "witnesses": {key: {"re": z.real, "im": z.imag} for key, z in where.items()}}


def cmd_pogorelov(args):
    m, n, k = args.m, args.n, args.k
    if not 1 <= k <= n:
        raise InputError(f"--k must satisfy 1 <= k <= n, got k={k}, n={n}")
    beta_crit = pg.critical_beta(m, n, k) if 1 <= m < n else None
    beta = args.beta if args.beta is not None else beta_crit
    try:
        params = pg.PogorelovParams(m, n, beta)
    except (TypeError, ValueError) as exc:
        raise InputError(str(exc)) from exc
    if args.points < 1:
        raise InputError("--points must be positive")
    seed = resolve_seed(args.seed)
    rng = make_rng(seed)
    checks = pogorelov_report(params, args.points, rng)
    res = checks["residuals"]
    ok = (
        res["spectrum"] <= SPECTRUM_TOL
        and res["det_closed_vs_lu"] <= SPECTRUM_TOL
        and res["det_closed_vs_product"] <= SPECTRUM_TOL
        and res["trace"] <= SPECTRUM_TOL
        and res["fd_hessian"] <= FD_TOL
    )
    exponent = pg.mak_closed_form_exponent(m, n, k, beta)
    near_n = {"expected_exponent": exponent}
    if abs(exponent) > 1e-12:
        fitted = pg.fit_mak_exponent(params, k)
        near_n["fitted_exponent"] = fitted
        near_n["relative_error"] = abs(fitted - exponent) / abs(exponent)
        ok = ok and near_n["relative_error"] <= EXPONENT_TOL
    else:
        probe = pg.mak_smoothness_probe(params, k)
        near_n.update({key: probe[key] for key in ("min", "max", "limit_estimate", "last_relative_change", "positive", "bounded")})
        ok = ok and probe["positive"] and probe["bounded"]
    table = {
        "critical_beta": beta_crit,
        "p_threshold": p_threshold(comb(n, k), n),
        "p_star": pg.p_star(n, k) if k < n else None,
        "w2p_bound": (n - m) / (1.0 - beta) if beta < 1 else None,
        "holder_alpha_max": min(1.0, 2.0 * beta - 1.0) if beta > 0.5 else None,
    }
    results = {"residuals": res, "mak_near_singular_set": near_n, "table": table, "passed": bool(ok)}
    params_out = {"m": m, "n": n, "k": k, "beta": beta, "points": args.points}
    report = _envelope("pogorelov", params_out, seed, results, checks["witnesses"])
    return report, EXIT_OK if ok else EXIT_VIOLATION


# -- mollify ----------------------------------------------------------------

MOLLIFY_FIELDS = ("quad", "quartic", "pogorelov", "pluriharmonic")


def _parse_floats(text, what):
    try:
        vals = [float(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise InputError(f"bad {what}: {text!r}") from exc
    if not vals:
        raise InputError(f"empty {what}")
    return vals


def cmd_mollify(args):
    eps_list = _parse_floats(args.eps_list, "--eps-list")
    if any(e <= 0 for e in eps_list):
        raise InputError("eps values must be positive")
    if args.samples < 1:
        raise InputError("--samples must be positive")
    try:
        field = get_field(args.field, args.n)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    if args.point is None:
        z = np.full(args.n, 0.5 + 0.25j)
    else:
        coords = _parse_floats(args.point, "--point")
        if len(coords) != 2 * args.n:
            raise InputError(f"--point needs 2n = {2 * args.n} real coordinates (x..., y...)")
        z = np.array(coords[: args.n]) + 1j * np.array(coords[args.n :])
    seed = resolve_seed(args.seed)
    rows = []
    for e in eps_list:
        est = t_eps(field, z, e, args.samples, seed)
        rows.append((e, est.value, est.stderr))
    # every field offered here is subharmonic, so T_eps must not be significantly negative
    ok = all(v >= -3.0 * s for _, v, s in rows)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["eps", "value", "stderr"])
    for e, v, s in rows:
        writer.writerow([repr(e), repr(v), repr(s)])
    return buf.getvalue(), EXIT_OK if ok else EXIT_VIOLATION


# -- embed-check ------------------------------------------------------------


def cmd_embed(args):
    if args.points < 1:
        raise InputError("--points must be positive")
    seed = resolve_seed(args.seed)
    rng = make_rng(seed)
    rows, witnesses = [], {}
    for n in range(1, args.max_n + 1):
        for name, field in field_catalog(n).items():
            if not field.smooth:
                continue
            worst, at = 0.0, None
            for _ in range(args.points):
                # keep away from the singular sets of the pogorelov and log fields
                z = rng.uniform(-1, 1, n) + 1j * rng.uniform(-1, 1, n)
                if name == "pogorelov":
                    z[1:] += 0.5
                if name == "log_distance":
                    z = z * 0.3 - 0.5
                r = hessian_identity_residual(field, z, args.h)
                if r >= worst:
                    worst, at = r, z
            rows.append({"field": name, "n": n, "max_residual": worst, "passed": worst <= args.tol})
            witnesses[f"{name}/n={n}"] = {"re": at.real, "im": at.imag}
    ok = all(r["passed"] for r in rows)
    params = {"max_n": args.max_n, "h": args.h, "points": args.points, "tol": args.tol}
    return _envelope("embed-check", params, seed, rows, witnesses), EXIT_OK if ok else EXIT_VIOLATION


# -- entry point ------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hcl", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("compound", help="additive compound of a Hermitian matrix")
    c.add_argument("--matrix", required=True, help='JSON file {"n", "re", "im"}')
    c.add_argument("--k", type=int, required=True)
    c.add_argument("--out", help="write the report here instead of stdout")

    v = sub.add_parser("verify", help="sampled certification of operator properties")
    v.add_argument("--op", required=True, choices=["det", "sigmak", "mak", "interp2d"])
    v.add_argument("--n", type=int)
    v.add_argument("--k", type=int)
    v.add_argument("--s", type=float, default=0.5)
    v.add_argument("--prop", action="append", help=f"property name, comma list or 'all' (default: {','.join(DEFAULT_PROPS)})")
    v.add_argument("--samples", type=int, default=10_000)
    v.add_argument("--seed", type=int)
    v.add_argument("--out")

    g = sub.add_parser("pogorelov", help="closed-form checks for (1+|z'|^2)|z''|^(2 beta)")
    g.add_argument("--m", type=int, required=True)
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--k", type=int, required=True)
    g.add_argument("--beta", type=float, help="default: the critical value 1 - C(m,k)/C(n,k)")
    g.add_argument("--points", type=int, default=200)
    g.add_argument("--seed", type=int)
    g.add_argument("--out")

    m = sub.add_parser("mollify", help="T_eps sweep, CSV output")
    m.add_argument("--field", required=True, choices=MOLLIFY_FIELDS)
    m.add_argument("--n", type=int, default=2)
    m.add_argument("--eps-list", default="0.1,0.2,0.4,0.8")
    m.add_argument("--samples", type=int, default=100_000)
    m.add_argument("--point", help="comma-separated real coordinates x_1..x_n,y_1..y_n")
    m.add_argument("--seed", type=int)
    m.add_argument("--out")

    e = sub.add_parser("embed-check", help="complex/real Hessian identity over the field catalog")
    e.add_argument("--max-n", type=int, default=3)
    e.add_argument("--h", type=float, default=1e-4)
    e.add_argument("--points", type=int, default=5)
    e.add_argument("--tol", type=float, default=1e-4)
    e.add_argument("--seed", type=int)
    e.add_argument("--out")
    return p


COMMANDS = {
    "compound": cmd_compound,
    "verify": cmd_verify,
    "pogorelov": cmd_pogorelov,
    "mollify": cmd_mollify,
    "embed-check": cmd_embed,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)  # argparse itself exits with 2 on bad flags
    try:
        report, code = COMMANDS[args.command](args)
    except InputError as exc:
        print(f"hcl {args.command}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (EigenConvergenceError, FloatingPointError, np.linalg.LinAlgError, RuntimeError) as exc:
        print(f"hcl {args.command}: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    if isinstance(report, str):
        if args.out:
            with open(args.out, "w") as fh:
                fh.write(report)
        else:
            sys.stdout.write(report)
    else:
        _emit(report, args.out)
    return code


if __name__ == "__main__":
    sys.exit(main())
