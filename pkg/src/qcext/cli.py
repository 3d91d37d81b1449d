"""Command-line front end.

Subcommands::

    qcext extend    evaluate an extension operator on a half-plane grid
    qcext verify    run a verification suite and report PASS/FAIL per check
    qcext decompose factor a bi-Lipschitz map into near-identity factors
    qcext info      describe a map file (kind tree, certified bounds)

Exit codes: 0 success / all checks pass; 1 verification failure; 2 usage or
parse error; 3 numerical failure.  Output is a pure function of the inputs
and flags; randomized suites draw from a seeded generator (--seed, default 0).
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from dataclasses import dataclass

import numpy as np

from . import analysis, decompose as dc
from .beurling_ahlfors import BAConfig, ba_affine_naturality_residual, extend_ba
from .douady_earle import (CircleMap, MobiusAutomorphism, circle_map_from_dict,
                           de_naturality_residual, extend_de)
from .errors import DomainError, QCExtError
from .extensions import ExtParams, act, extend_family, extend_ns, family_extension
from .realmap import (Affine, BUMP_SLOPE_MAX, BumpProfile, IdentityPlusBump,
                      RealMap, compose, map_from_dict, map_from_file)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_NUMERICAL = 3


@dataclass(frozen=True)
class GridSpec:
    """Half-plane evaluation grid: linear in x, logarithmic in y."""

    x_min: float = -2.0
    x_max: float = 2.0
    y_min: float = 1e-2
    y_max: float = 2.0
    nx: int = 20
    ny: int = 20

    def __post_init__(self):
        if not self.y_min > 0:
            raise DomainError("grid y_min must be positive")
        if self.nx < 2 or self.ny < 2:
            raise DomainError("grid needs nx, ny >= 2")
        if not (self.x_max > self.x_min and self.y_max > self.y_min):
            raise DomainError("grid ranges must be increasing")

    def points(self) -> np.ndarray:
        return analysis.half_plane_grid(self.x_min, self.x_max, self.y_min,
                                        self.y_max, self.nx, self.ny)


# -- deterministic random inputs for the verification suites ------------------

def random_bump_map(rng: np.random.Generator, max_bumps: int = 3,
                    slope_budget: float = 0.5, with_affine: bool = True) -> RealMap:
    """Random certified bi-Lipschitz map: identity plus bumps whose slope
    sups total below ``slope_budget``, optionally post-scaled by an affine."""
    k = int(rng.integers(1, max_bumps + 1))
    total = float(rng.uniform(0.15, slope_budget))
    weights = rng.dirichlet(np.ones(k)) * total
    bumps = []
    for w in weights:
        width = float(rng.uniform(0.5, 2.0))
        sign = 1.0 if rng.uniform() < 0.5 else -1.0
        bumps.append(BumpProfile(float(rng.uniform(-3.0, 3.0)), width,
                                 sign * w * width / BUMP_SLOPE_MAX))
    f: RealMap = IdentityPlusBump(bumps)
    if with_affine and rng.uniform() < 0.7:
        f = compose(Affine(float(rng.uniform(0.7, 1.5)),
                           float(rng.uniform(-2.0, 2.0))), f)
    return f


def random_group_params(rng: np.random.Generator,
                        a_range=(-2.0, 2.0), alpha_range=(0.3, 4.0)) -> ExtParams:
    return ExtParams(float(rng.uniform(*a_range)), float(rng.uniform(*alpha_range)))


# -- extend ------------------------------------------------------------------

def _row_dilatation(method, f, p, z):
    if method == "family" and p.alpha == 0 and not f.has_second_deriv:
        return None
    if method in ("family", "ns"):
        try:
            return analysis.dilatation_analytic(f, p, z).analytic
        except DomainError:
            return None
    return None


def _evaluate_rows(method: str, boundary_map, p, grid: GridSpec, ba_cfg: BAConfig,
                   de_tol: float, de_nodes: int):
    rows = []
    for z in grid.points():
        z = complex(z)
        if method == "family":
            val = extend_family(p, boundary_map, z)
        elif method == "ns":
            val = extend_ns(boundary_map, z)
        elif method == "ba":
            val = extend_ba(boundary_map, z, ba_cfg)
        elif method == "de":
            if not abs(z) < 1:
                raise DomainError(
                    f"grid point {z} lies outside the unit disk (method de)")
            val = extend_de(boundary_map, z, tol=de_tol, n_nodes=de_nodes)
        else:  # pragma: no cover - argparse restricts choices
            raise DomainError(f"unknown method {method}")
        dil = _row_dilatation(method, boundary_map, p, z) if method != "ba" else None
        rows.append((z.real, z.imag, complex(val).real, complex(val).imag, dil))
    return rows


def _write_rows(rows, out_path, fmt: str):
    if fmt == "csv":
        def fmt_cell(v):
            return "" if v is None else repr(v)
        lines = [["x", "y", "re", "im", "dilatation"]]
        lines += [[fmt_cell(c) for c in row] for row in rows]
        if out_path is None:
            writer = csv.writer(sys.stdout)
            writer.writerows(lines)
        else:
            with open(out_path, "w", newline="", encoding="utf-8") as fh:
                csv.writer(fh).writerows(lines)
    else:
        payload = [{"x": r[0], "y": r[1], "re": r[2], "im": r[3],
                    "dilatation": r[4]} for r in rows]
        text = json.dumps(payload, indent=1)
        if out_path is None:
            sys.stdout.write(text + "\n")
        else:
            with open(out_path, "w", encoding="utf-8") as fh:
                fh.write(text + "\n")


def cmd_extend(args) -> int:
    grid = GridSpec(args.x_min, args.x_max, args.y_min, args.y_max,
                    args.nx, args.ny)
    if args.method == "de":
        with open(args.map, "r", encoding="utf-8") as fh:
            boundary_map = circle_map_from_dict(json.load(fh))
        p = None
    else:
        boundary_map = map_from_file(args.map)
        p = ExtParams(args.a, args.alpha) if args.method == "family" else ExtParams(1.0, 2.0)
    ba_cfg = BAConfig(quad_tol=args.quad_tol, im_scale=args.im_scale)
    rows = _evaluate_rows(args.method, boundary_map, p, grid, ba_cfg,
                          args.tol, args.n_nodes)
    _write_rows(rows, args.out, args.format)
    return EXIT_OK


# -- verify ------------------------------------------------------------------

def _check(label: str, value: float, threshold: float, invert: bool = False):
    ok = value >= threshold if invert else value <= threshold
    rel = ">=" if invert else "<="
    return (label, value, f"{rel} {threshold:g}", bool(ok))


def _suite_homomorphism(cfg, rng):
    grid = analysis.half_plane_grid()
    bound = 1e-10 * (1.0 + float(np.max(np.abs(grid))))
    rows = []
    for i in range(cfg["trials"]):
        f = random_bump_map(rng)
        g = random_bump_map(rng)
        p = random_group_params(rng)
        r = analysis.homomorphism_residual(p, f, g, grid)
        rows.append(_check(f"homomorphism trial {i:02d}", r, bound))
    return rows


def _suite_boundary(cfg, rng):
    rows = []
    for i in range(cfg["trials"]):
        f = random_bump_map(rng)
        p = random_group_params(rng, a_range=(-1.0, 1.0), alpha_range=(0.5, 5.0))
        c = analysis.boundary_constant(p, f.deriv_hi)
        for y in (1e-1, 1e-2, 1e-3):
            r = analysis.boundary_residual(p, f, (-1.0, 1.0), y)
            rows.append(_check(f"boundary trial {i:02d} y={y:g}", r / y, c))
    return rows


def _suite_dilatation(cfg, rng):
    rows = []
    map_kind = cfg.get("map", "random")
    expect = cfg.get("expect", "quasiconformal")
    p = ExtParams(cfg.get("a", 1.0), cfg.get("alpha", 2.0))
    if expect == "not-quasiconformal":
        threshold = cfg.get("threshold", 0.999)
        if map_kind == "cubic":
            ys = np.geomspace(0.05, 1.0, 12)
            offs = np.linspace(-0.02, 0.02, 9)
            grid = (ys[:, None] * (1.0 + offs[None, :])
                    + 1j * ys[:, None]).ravel()
            sup = analysis.sup_dilatation(analysis.cubic_map(), p, grid)
        else:
            f = map_from_dict(map_kind) if isinstance(map_kind, dict) \
                else random_bump_map(rng, with_affine=False)
            grid = analysis.half_plane_grid(-0.9, 0.9, 1.0, 200.0, 15, 40)
            sup = analysis.sup_dilatation(f, ExtParams(p.a, 0.0), grid)
        rows.append(_check(f"supremum (expected not quasiconformal, alpha={p.alpha:g})",
                           sup, threshold, invert=True))
        if rows[-1][3]:
            print("flag: not quasiconformal (supremum approaches 1)")
        return rows
    for i in range(cfg["trials"]):
        f = random_bump_map(rng)
        pp = random_group_params(rng)
        sup = analysis.sup_dilatation(f, pp, analysis.half_plane_grid())
        bound = analysis.dilatation_bound(pp, *f.deriv_bounds())
        rows.append(_check(f"dilatation trial {i:02d} sup vs certified bound",
                           sup, bound + 1e-9))
        z = complex(rng.uniform(-1, 1), rng.uniform(0.3, 1.5))
        rep = analysis.compare_dilatation(f, pp, z, 1e-4)
        rows.append(_check(f"dilatation trial {i:02d} numeric gap", rep.gap, 1e-5))
    return rows


def _suite_pde(cfg, rng):
    rows = []
    quad = analysis.quadratic_window_map()
    r = analysis.pde_residual(quad, ExtParams(1.0, 2.0), 2.5 + 0.5j, h=5e-3)
    rows.append(_check("wave equation on the quadratic window", r, 1e-8))
    for i in range(cfg["trials"]):
        f = random_bump_map(rng, with_affine=False)
        p = random_group_params(rng, a_range=(-1.0, 1.0), alpha_range=(0.5, 3.0))
        z = complex(rng.uniform(-0.2, 0.2), rng.uniform(0.05, 0.15))
        r1 = analysis.pde_residual(f, p, z, h=1e-3)
        if r1 < 1e-6:
            # truncation below the h/2 roundoff floor: the ratio is not
            # measurable, but the residual itself is already tiny
            rows.append(_check(f"pde trial {i:02d} residual (flat point)", r1, 1e-6))
            continue
        r2 = analysis.pde_residual(f, p, z, h=5e-4)
        rows.append((f"pde trial {i:02d} ratio under h/2", r1 / r2,
                     "in [3.5, 4.5]", bool(3.5 <= r1 / r2 <= 4.5)))
    return rows


def _suite_group_action(cfg, rng):
    rows = []
    grid = analysis.half_plane_grid()
    e01 = family_extension(ExtParams(0.0, 1.0))
    for i in range(cfg["trials"]):
        f = random_bump_map(rng)
        p = random_group_params(rng, a_range=(-2.0, 2.0), alpha_range=(0.2, 5.0))
        lhs = act(p, e01, f, grid)
        rhs = extend_family(p, f, grid)
        r = float(np.max(np.abs(lhs - rhs)))
        rows.append(_check(f"orbit identity trial {i:02d}", r, 1e-12))
    return rows


def _suite_ba_naturality(cfg, rng):
    rows = []
    cfg_ba = BAConfig()
    z0 = 0.4 + 0.8j
    r = abs(extend_ba(Affine(1.0, 0.0), z0, BAConfig(im_scale=1.0))
            - (z0.real + 0.5j * z0.imag))
    rows.append(_check("printed normalization pins E(Id) = x + i y/2", r,
                       BAConfig().quad_tol))
    for i in range(cfg["trials"]):
        f = random_bump_map(rng, with_affine=False)
        g = Affine(float(rng.uniform(0.5, 2.0)), float(rng.uniform(-2.0, 2.0)))
        z = complex(rng.uniform(-1.5, 1.5), rng.uniform(0.2, 2.0))
        r = ba_affine_naturality_residual(f, g, z, cfg_ba)
        rows.append(_check(f"affine naturality trial {i:02d} (im_scale=2)",
                           r, 10.0 * cfg_ba.quad_tol))
    return rows


def _suite_de_naturality(cfg, rng):
    rows = []
    zs = [0.0, 0.5, -0.5, 0.5j, -0.3 + 0.4j]
    for i in range(cfg["trials"]):
        m = MobiusAutomorphism(float(rng.uniform(0, 2 * math.pi)),
                               complex(*(rng.uniform(-0.42, 0.42, 2))))
        z = zs[i % len(zs)]
        r = abs(extend_de(m.boundary(), z) - m(z))
        rows.append(_check(f"mobius fixing trial {i:02d}", r, 1e-6))
        f = CircleMap.from_fourier(float(rng.uniform(-0.3, 0.3)),
                                   cos_amps=rng.uniform(-0.05, 0.05, 2),
                                   sin_amps=rng.uniform(-0.05, 0.05, 2))
        for mode in ("post", "pre"):
            r = de_naturality_residual(f, m, z, mode=mode)
            rows.append(_check(f"naturality ({mode}) trial {i:02d}", r, 1e-5))
    return rows


def _suite_decompose(cfg, rng):
    rows = []
    eps0 = cfg.get("eps0", 0.2)
    for i in range(cfg["trials"]):
        f = random_bump_map(rng)
        fac = dc.decompose_bilip(f, eps0)
        worst = max(max(m.deriv_hi - 1.0, 1.0 - m.deriv_lo) for m in fac.factors)
        rows.append(_check(f"decompose trial {i:02d} factor certification",
                           worst, eps0))
        rows.append(_check(f"decompose trial {i:02d} recomposition error",
                           fac.recomposition_error, 1e-6))
    return rows


_SUITES = {
    "homomorphism": (_suite_homomorphism, 25),
    "boundary": (_suite_boundary, 10),
    "dilatation": (_suite_dilatation, 10),
    "pde": (_suite_pde, 10),
    "group-action": (_suite_group_action, 20),
    "ba-naturality": (_suite_ba_naturality, 20),
    "de-naturality": (_suite_de_naturality, 8),
    "decompose": (_suite_decompose, 5),
}

_CONFIG_KEYS = {"trials", "seed", "map", "expect", "a", "alpha", "threshold", "eps0"}


def _load_config(args):
    cfg = {}
    if args.config is not None:
        with open(args.config, "r", encoding="utf-8") as fh:
            try:
                cfg = json.load(fh)
            except json.JSONDecodeError as exc:
                raise DomainError(f"malformed config: {exc}") from exc
        if not isinstance(cfg, dict):
            raise DomainError("config must be a JSON object")
        unknown = set(cfg) - _CONFIG_KEYS
        if unknown:
            raise DomainError(f"unknown config keys: {sorted(unknown)}")
    if args.trials is not None:
        cfg["trials"] = args.trials
    if args.seed is not None:
        cfg["seed"] = args.seed
    return cfg


def cmd_verify(args) -> int:
    suite_fn, default_trials = _SUITES[args.suite]
    cfg = _load_config(args)
    cfg.setdefault("trials", default_trials)
    cfg.setdefault("seed", 0)
    rng = np.random.default_rng(cfg["seed"])
    rows = suite_fn(cfg, rng)
    all_ok = True
    for label, value, bound, ok in rows:
        all_ok &= ok
        status = "PASS" if ok else "FAIL"
        print(f"{status} {label}: {value:.6g} ({bound})")
    n_ok = sum(1 for r in rows if r[3])
    print(f"suite {args.suite}: {n_ok}/{len(rows)} checks passed")
    return EXIT_OK if all_ok else EXIT_CHECK_FAILED


# -- decompose / info ----------------------------------------------------------

def cmd_decompose(args) -> int:
    f = map_from_file(args.map)
    fac = dc.decompose_bilip(f, args.eps0, tol=args.tol)
    payload = fac.to_dict()
    text = json.dumps(payload, indent=1)
    if args.out is None:
        sys.stdout.write(text + "\n")
    else:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    print(f"factors: {len(fac)}  recomposition error: "
          f"{fac.recomposition_error:.3g}  eps: {fac.eps:.6g}", file=sys.stderr)
    return EXIT_OK


def _describe(f: RealMap, indent: int = 0):
    pad = "  " * indent
    lo, hi = f.deriv_bounds()
    print(f"{pad}{f.kind}: deriv in [{lo:.6g}, {hi:.6g}]"
          + ("" if f.bilipschitz else "  (not bi-Lipschitz)"))
    for attr in ("outer", "inner", "base"):
        child = getattr(f, attr, None)
        if isinstance(child, RealMap):
            _describe(child, indent + 1)


def cmd_info(args) -> int:
    f = map_from_file(args.map)
    _describe(f)
    print(f"C^2: {f.has_second_deriv}")
    return EXIT_OK


# -- parser --------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qcext",
        description="Quasiconformal boundary extensions: evaluate, verify, factor.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_ext = sub.add_parser("extend", help="evaluate an extension on a grid")
    p_ext.add_argument("--map", required=True,
                       help="map description file (circle map for method de)")
    p_ext.add_argument("--method", choices=("family", "ns", "ba", "de"),
                       default="ns")
    p_ext.add_argument("--a", type=float, default=1.0)
    p_ext.add_argument("--alpha", type=float, default=2.0)
    p_ext.add_argument("--x-min", type=float, default=-2.0)
    p_ext.add_argument("--x-max", type=float, default=2.0)
    p_ext.add_argument("--y-min", type=float, default=1e-2)
    p_ext.add_argument("--y-max", type=float, default=2.0)
    p_ext.add_argument("--nx", type=int, default=20)
    p_ext.add_argument("--ny", type=int, default=20)
    p_ext.add_argument("--quad-tol", type=float, default=1e-10)
    p_ext.add_argument("--im-scale", type=float, default=2.0)
    p_ext.add_argument("--n-nodes", type=int, default=512)
    p_ext.add_argument("--tol", type=float, default=1e-10)
    p_ext.add_argument("--out", default=None)
    p_ext.add_argument("--format", choices=("csv", "json"), default="csv")
    p_ext.set_defaults(func=cmd_extend)

    p_ver = sub.add_parser("verify", help="run a verification suite")
    p_ver.add_argument("--suite", choices=sorted(_SUITES), required=True)
    p_ver.add_argument("--seed", type=int, default=None)
    p_ver.add_argument("--trials", type=int, default=None)
    p_ver.add_argument("--config", default=None, help="JSON config file")
    p_ver.set_defaults(func=cmd_verify)

    p_dec = sub.add_parser("decompose", help="factor a bi-Lipschitz map")
    p_dec.add_argument("--map", required=True)
    p_dec.add_argument("--eps0", type=float, required=True)
    p_dec.add_argument("--tol", type=float, default=1e-6)
    p_dec.add_argument("--out", default=None)
    p_dec.set_defaults(func=cmd_decompose)

    p_inf = sub.add_parser("info", help="describe a map file")
    p_inf.add_argument("--map", required=True)
    p_inf.set_defaults(func=cmd_info)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0,) else 0
    try:
        prepared = args.func
    except AttributeError:  # pragma: no cover
        parser.print_usage()
        return EXIT_USAGE
    try:
        return prepared(args)
    except (DomainError, FileNotFoundError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except QCExtError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


def entry():  # console-script entry point
    sys.exit(main())


if __name__ == "__main__":  # pragma: no cover
    entry()
