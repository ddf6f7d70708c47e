"""Command line interface: batch axiom suites and exports.

Subcommands:
  run          execute the configured suites, write JSON reports + summary CSV
  propagator   solve one configured source and export solution/Cauchy data
  smatrix      causal-factorization sweep over support separations
  modular      modular lab for one (n, rho), report + Delta-spectrum CSV
  convergence  refinement family CSV {h, suite, max_deviation}

Reports are deterministic functions of (config, seed): two runs with the
same inputs produce byte-identical files.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from .config import load_config, tolerance
from .errors import ConfigError, LcqftError


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="lcqft",
        description="axiom suites for the locally covariant free field at desk scale")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, doc in (
        ("run", "execute the configured suites"),
        ("propagator", "solve a configured source and export it"),
        ("smatrix", "causal factorization sweep"),
        ("modular", "modular lab report"),
        ("convergence", "refinement family CSV"),
    ):
        p = sub.add_parser(name, help=doc)
        p.add_argument("config", help="path to the JSON config")
        p.add_argument("--seed", type=int, help="override the config seed")
        p.add_argument("--out", help="override the output directory")
        p.add_argument("--samples", type=int, help="override per-check sample counts")
    args = parser.parse_args(argv)

    try:
        cfg = load_config(args.config)
        if args.seed is not None:
            cfg["seed"] = args.seed
        if args.out is not None:
            cfg["output_dir"] = args.out
        if args.samples is not None:
            cfg["samples"] = args.samples
        out_dir = Path(cfg["output_dir"])
        out_dir.mkdir(parents=True, exist_ok=True)
        return _COMMANDS[args.command](cfg, out_dir)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except LcqftError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def _write_json(path: Path, doc) -> None:
    path.write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n")


def _cmd_run(cfg: dict, out_dir: Path) -> int:
    from .suites import run_all

    results = run_all(cfg)
    all_pass = True
    summary = ["suite,check_id,n_samples,max_deviation,tolerance,pass"]
    for name in cfg["suites"]:
        reports = results[name]
        _write_json(out_dir / f"{name}.json",
                    {"suite": name, "seed": cfg["seed"],
                     "reports": [r.to_dict() for r in reports]})
        for r in reports:
            status = "PASS" if r.passed else "FAIL"
            print(f"[{status}] {name}/{r.check_id}: max_deviation={r.max_deviation:.3e} "
                  f"tolerance={r.tolerance:.3e}")
            summary.append(f"{name},{r.check_id},{r.n_samples},"
                           f"{r.max_deviation!r},{r.tolerance!r},{r.passed}")
            all_pass &= r.passed
    (out_dir / "summary.csv").write_text("\n".join(summary) + "\n")
    print("all suites passed" if all_pass else "SUITE FAILURES PRESENT")
    return 0 if all_pass else 1


def _cmd_propagator(cfg: dict, out_dir: Path) -> int:
    from .greens import cauchy_data, causal_propagator
    from .spacetime import minkowski_plane
    from .testfun import bump

    p = cfg["propagator"]
    M = minkowski_plane(p["h"], (-1.25, 1.25), (-4.0, 4.0), p["mass"])
    f = bump(M, tuple(p["center"]), tuple(p["radii"]), p["amplitude"])
    u = causal_propagator(f)
    (out_dir / "propagator_solution.csv").write_text(u.to_csv())
    data = cauchy_data(u, 0.0)
    lines = ["x,phi,pi"]
    for x, a, b in zip(M.positions(), data.phi, data.pi):
        lines.append(f"{float(x)!r},{float(a)!r},{float(b)!r}")
    (out_dir / "propagator_cauchy.csv").write_text("\n".join(lines) + "\n")
    _write_json(out_dir / "propagator.json", {
        "spacetime": M.to_json(),
        "source": {"center": p["center"], "radii": p["radii"],
                   "amplitude": p["amplitude"]},
        "solution_sup_norm": float(np.abs(u.values).max()),
    })
    print(f"propagator exports written to {out_dir}")
    return 0


def _cmd_smatrix(cfg: dict, out_dir: Path) -> int:
    from .natfield import check_causal_factorization
    from .spacetime import minkowski_plane
    from .testfun import bump

    h = 1.0 / 64
    M = minkowski_plane(h, (-1.25, 1.25), (-5.0, 5.0), 1.0)
    tol = tolerance(cfg, "smatrix_factorization")
    rows = ["separation,max_deviation,tolerance,pass"]
    reports = []
    all_pass = True
    for d in cfg["smatrix_sweep"]["separations"]:
        lam = bump(M, (d / 2 + 0.3, 0.0), (0.25, 0.3), 1.0)
        nu = bump(M, (-d / 2 - 0.3, 0.2), (0.25, 0.3), 0.8)
        mu = bump(M, (0.0, 0.6), (0.25, 0.3), -0.7)
        rep = check_causal_factorization(M, lam, mu, nu, tol)
        reports.append({"separation": d, **rep.to_dict()})
        rows.append(f"{d!r},{rep.max_deviation!r},{tol!r},{rep.passed}")
        all_pass &= rep.passed
        print(f"separation {d}: max_deviation={rep.max_deviation:.3e}")
    (out_dir / "smatrix_sweep.csv").write_text("\n".join(rows) + "\n")
    _write_json(out_dir / "smatrix_sweep.json", {"reports": reports})
    return 0 if all_pass else 1


def _cmd_modular(cfg: dict, out_dir: Path) -> int:
    from .modular import (
        StandardPair,
        check_commutant,
        check_flow_invariance,
        check_kms,
        random_density_matrix,
        tomita_operators,
    )

    p = cfg["modular_cli"]
    rng = np.random.default_rng(p["seed"])
    if p["rho"] is not None:
        rho = np.diag(np.array(p["rho"], dtype=float))
    else:
        rho = random_density_matrix(p["n"], rng)
    pair = StandardPair.from_rho(rho)
    data = tomita_operators(pair)
    spec = np.sort(np.linalg.eigvalsh(data.delta))
    comm = check_commutant(pair, data, p["samples"], rng)
    flow = check_flow_invariance(pair, data, p["samples"], rng)
    kms = check_kms(pair, data, p["samples"], rng)
    report = {
        "n": pair.n,
        "rho_diag": [float(v) for v in np.diag(rho).real],
        "commutant": comm,
        "flow": flow,
        "kms": kms,
        "pass": bool(comm["pass"] and flow["pass"] and kms["pass"]),
    }
    _write_json(out_dir / "modular_report.json", report)
    rows = ["index,eigenvalue"]
    for i, v in enumerate(spec):
        rows.append(f"{i},{float(v)!r}")
    (out_dir / "delta_spectrum.csv").write_text("\n".join(rows) + "\n")
    print(f"modular lab n={pair.n}: pass={report['pass']}")
    return 0 if report["pass"] else 1


def _cmd_convergence(cfg: dict, out_dir: Path) -> int:
    from .suites import convergence_rows

    rows = convergence_rows(cfg)
    lines = ["h,suite,max_deviation"]
    for r in rows:
        lines.append(f"{r['h']!r},{r['suite']},{r['max_deviation']!r}")
    (out_dir / "convergence.csv").write_text("\n".join(lines) + "\n")

    lo, hi = tolerance(cfg, "order_ratio_lo"), tolerance(cfg, "order_ratio_hi")
    verdicts = []
    all_pass = True
    suites = sorted({r["suite"] for r in rows})
    for s in suites:
        seq = sorted((r for r in rows if r["suite"] == s), key=lambda r: -r["h"])
        if s.startswith("greens"):
            for a, b in zip(seq, seq[1:]):
                ratio = a["max_deviation"] / max(b["max_deviation"], 1e-300)
                ok = lo <= ratio <= hi
                verdicts.append({"suite": s, "h_coarse": a["h"], "h_fine": b["h"],
                                 "ratio": ratio, "pass": ok})
                all_pass &= ok
                print(f"{s}: {a['h']:g} -> {b['h']:g} ratio {ratio:.2f} "
                      f"({'PASS' if ok else 'FAIL'})")
        else:
            tol = tolerance(cfg, "causality")
            for r in seq:
                ok = r["max_deviation"] <= tol
                verdicts.append({"suite": s, "h": r["h"],
                                 "max_deviation": r["max_deviation"], "pass": ok})
                all_pass &= ok
    _write_json(out_dir / "convergence_report.json", {"verdicts": verdicts})
    return 0 if all_pass else 1


_COMMANDS = {
    "run": _cmd_run,
    "propagator": _cmd_propagator,
    "smatrix": _cmd_smatrix,
    "modular": _cmd_modular,
    "convergence": _cmd_convergence,
}


if __name__ == "__main__":
    sys.exit(main())
