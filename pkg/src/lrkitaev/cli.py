"""Command-line front end: reproducible CSV pipelines for every study.

Subcommands
-----------
spectrum      per-mode table n,k,t_tilde,delta_tilde,omega,theta,phi
entropy-scan  S_nu(L) scans (N = 2L by default), optional analytic columns
fh-coeff      log-coefficient tables (weak alpha-sweeps, strong h-sweeps)
verify        Gaussian-vs-Fock-oracle cross check on small chains
reproduce     canned figure datasets (3a..7) plus a gnuplot script

Configuration is a flat JSON document whose keys mirror the long flag
names; explicit flags override config values.  All outputs are CSV with a
header row, comma separators, '.' decimals, 17-significant-digit floats
and LF line endings, so repeated runs are byte-identical regardless of
LRKITAEV_THREADS.

Exit codes: 0 success, 1 validation error, 2 computation error, 3 I/O error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import analysis, asymptotics, gaussian_state, model, oracle
from .errors import SizeError

_FLOAT_FMT = "{:.17g}"


def _fmt(x) -> str:
    if isinstance(x, float):
        return _FLOAT_FMT.format(x)
    return str(x)


def write_csv(path: str, header: list[str], rows: list[list]) -> None:
    text = "\n".join([",".join(header)]
                     + [",".join(_fmt(v) for v in row) for row in rows]) + "\n"
    if path == "-":
        sys.stdout.write(text)
        return
    Path(path).write_text(text, encoding="utf-8", newline="\n")


def _load_config(path: str | None) -> dict:
    if not path:
        return {}
    cfg = json.loads(Path(path).read_text(encoding="utf-8"))
    if not isinstance(cfg, dict):
        raise ValueError("config must be a flat JSON object")
    return cfg


def _merged(args: argparse.Namespace, key: str, default=None):
    val = getattr(args, key.replace("-", "_"), None)
    if val is not None:
        return val
    return args._config.get(key.replace("-", "_"), args._config.get(key, default))


def _int_list(text) -> list[int]:
    if isinstance(text, list):
        return [int(v) for v in text]
    return [int(tok) for tok in str(text).split(",") if tok]


def _float_list(text) -> list[float]:
    if isinstance(text, list):
        return [float(v) for v in text]
    return [float(tok) for tok in str(text).split(",") if tok]


def _chain(args, n_sites: int) -> model.ChainParams:
    return model.ChainParams(N=n_sites,
                             alpha1=float(_merged(args, "alpha1", 1.5)),
                             alpha2=float(_merged(args, "alpha2", 1.5)),
                             h=float(_merged(args, "h", 0.5)),
                             thermodynamic=bool(_merged(args, "thermodynamic", False)))


def _zero_mode_populations(params: model.ChainParams, filling: float) -> dict:
    tab = model.mode_table(params)
    return {int(n): filling for n, w in zip(tab["n"], tab["omega"]) if w < 1e-8}


def entropy_point(params: model.ChainParams, L: int, nu: float,
                  filling: float = 0.5) -> float:
    pops = _zero_mode_populations(params, filling)
    corr = gaussian_state.build_correlation_matrix(params, L, pops or None)
    return gaussian_state.renyi_entropy(corr, nu).value


# --------------------------------------------------------------------------
# subcommands
# --------------------------------------------------------------------------


def cmd_spectrum(args) -> int:
    n_sites = int(_merged(args, "n-sites", 64))
    params = _chain(args, n_sites)
    tab = model.mode_table(params)
    rows = [[int(n), k, t, d, w, th, ph]
            for n, k, t, d, w, th, ph in zip(tab["n"], tab["k"], tab["t"],
                                             tab["d"], tab["omega"],
                                             tab["theta"], tab["phi"])]
    write_csv(_merged(args, "out", "-"),
              ["n", "k", "t_tilde", "delta_tilde", "omega", "theta", "phi"], rows)
    return 0


def cmd_entropy_scan(args) -> int:
    l_list = _int_list(_merged(args, "subsystem", "16,32,64"))
    nu_list = _float_list(_merged(args, "nu", "1"))
    n_override = _merged(args, "n-sites", None)
    filling = float(_merged(args, "zero-mode-filling", 0.5))
    predict = bool(_merged(args, "predict", False))

    points = [{"L": L, "nu": nu} for L in l_list for nu in nu_list]
    for p in points:  # fail fast: every chain must validate before work starts
        _chain(args, int(n_override) if n_override else 2 * p["L"])

    def evaluate(p):
        n_sites = int(n_override) if n_override else 2 * p["L"]
        params = _chain(args, n_sites)
        out = {"S_numeric": entropy_point(params, p["L"], p["nu"], filling)}
        if predict:
            out.update(_prediction_columns(params, p["L"], p["nu"]))
        return out

    rows = []
    header = ["L", "nu", "S_numeric"] + (
        ["S_fh_prediction", "B_analytic"] if predict else []) + ["error"]
    for row in analysis.sweep(points, evaluate):
        base = [row.point["L"], row.point["nu"]]
        if row.error is None:
            vals = [row.values["S_numeric"]]
            if predict:
                vals += [row.values["S_fh_prediction"], row.values["B_analytic"]]
            rows.append(base + vals + [""])
        else:
            rows.append(base + [""] * (len(header) - 3) + [row.error])
    write_csv(_merged(args, "out", "-"), header, rows)
    return 0


def _prediction_columns(params: model.ChainParams, L: int, nu: float) -> dict:
    """Analytic B and the bare B ln L prediction where a closed form exists."""
    a1, a2, h = params.alpha1, params.alpha2, params.h
    if min(a1, a2) >= 1.0 and max(a1, a2) <= 2.0 and nu == int(nu) and nu >= 2:
        b = asymptotics.weak_regime_B(int(nu), a1, a2, h).total_B
    elif max(a1, a2) < 1.0 and nu == int(nu) and nu >= 2:
        b = asymptotics.strong_regime_B(int(nu), a1, a2, h, params.N).total_B
    else:
        return {"S_fh_prediction": float("nan"), "B_analytic": float("nan")}
    return {"S_fh_prediction": b * math.log(L), "B_analytic": b}


def cmd_fh_coeff(args) -> int:
    nu_list = [int(v) for v in _float_list(_merged(args, "nu", "2"))]
    a1 = float(_merged(args, "alpha1", 1.5))
    strong = a1 < 1.0
    out_rows = []
    if strong:
        h_grid = _float_list(_merged(args, "h-grid", "0.1,0.25,0.5,0.75,1.25,1.5,2.0"))
        n_modes = int(_merged(args, "n-modes", 1024))
        points = [{"h": h, "nu": nu} for nu in nu_list for h in h_grid]

        def evaluate(p):
            coeff = asymptotics.strong_regime_B(p["nu"], a1,
                                                float(_merged(args, "alpha2", a1)),
                                                p["h"], n_modes)
            single = (asymptotics.single_discontinuity_approx(p["nu"], a1, p["h"])
                      if p["h"] not in (0.0, 1.0) else float("nan"))
            return {"B_total": coeff.total_B, "B_single_disc": single}

        header = ["h", "nu", "B_total", "B_single_disc", "error"]
        for row in analysis.sweep(points, evaluate):
            if row.error is None:
                out_rows.append([row.point["h"], row.point["nu"],
                                 row.values["B_total"], row.values["B_single_disc"], ""])
            else:
                out_rows.append([row.point["h"], row.point["nu"], "", "", row.error])
    else:
        alpha_grid = _float_list(_merged(args, "alpha-grid",
                                         ",".join(str(round(1.0 + 0.05 * i, 2))
                                                  for i in range(21))))
        header = ["alpha", "nu", "B_total", "c_eff", "B_short_range", "error"]
        points = [{"alpha": a, "nu": nu} for nu in nu_list for a in alpha_grid]

        def evaluate(p):
            b = asymptotics.equal_alpha_log_coefficient(p["nu"], p["alpha"])
            return {"B_total": b,
                    "c_eff": asymptotics.effective_central_charge(p["nu"], p["alpha"]),
                    "B_short_range": asymptotics.short_range_coefficient(p["nu"])}

        for row in analysis.sweep(points, evaluate):
            if row.error is None:
                out_rows.append([row.point["alpha"], row.point["nu"],
                                 row.values["B_total"], row.values["c_eff"],
                                 row.values["B_short_range"], ""])
            else:
                out_rows.append([row.point["alpha"], row.point["nu"], "", "", "", row.error])
    write_csv(_merged(args, "out", "-"), header, out_rows)
    return 0


_VERIFY_GRID = [(0.5, 0.5, 0.3), (0.5, 0.5, 2.0), (1.5, 1.5, 0.3),
                (1.5, 1.5, 2.0), (3.0, 3.0, 0.3), (3.0, 3.0, 2.0)]


def cmd_verify(args) -> int:
    n_sites = int(_merged(args, "n-sites", 8))
    if n_sites > 14:
        raise SizeError("verify is limited to N <= 14")
    tol = 1e-8
    failed = False
    for a1, a2, h in _VERIFY_GRID:
        params = model.ChainParams(N=n_sites, alpha1=a1, alpha2=a2, h=h)
        state = oracle.build_bcs_vacuum(params)
        defect = oracle.vacuum_defect(state, params)
        worst = 0.0
        for L in range(1, n_sites // 2 + 1):
            corr = gaussian_state.build_correlation_matrix(params, L)
            if getattr(args, "corrupt", False):
                corr.entries[0, 0] += 1e-3  # negative-control test hook
            for nu in (1, 2, 3):
                s_g = gaussian_state.renyi_entropy(corr, nu).value
                s_o = oracle.exact_entropy(state, L, nu)
                worst = max(worst, abs(s_g - s_o))
        status = "ok" if (worst < tol and defect < 1e-10) else "FAIL"
        failed = failed or status == "FAIL"
        print(f"alpha1={a1} alpha2={a2} h={h}: max|dS|={worst:.3e} "
              f"vacuum-defect={defect:.3e} [{status}]")
    if failed:
        print("verification FAILED", file=sys.stderr)
        return 2
    print("verification passed")
    return 0


# --------------------------------------------------------------------------
# figure reproduction
# --------------------------------------------------------------------------

_OCTAVES = [32, 64, 128, 256, 512]


def _scan_entropy(a1, a2, h, nu, l_values, thermodynamic=False, filling=0.5):
    out = []
    for L in l_values:
        params = model.ChainParams(N=2 * L, alpha1=a1, alpha2=a2, h=h,
                                   thermodynamic=thermodynamic)
        out.append((L, entropy_point(params, L, nu, filling)))
    return out

def _figure_weak_scan(a1, a2, h, nu, b_value):
    pts = _scan_entropy(a1, a2, h, nu, _OCTAVES)
    fit = analysis.fit_log_plus_subleading(
        [(L, s) for L, s in pts], b_fixed=b_value)
    rows = []
    for L, s in pts:
        sub = fit.c1 + fit.c2 * L ** (-fit.c3)
        rows.append([L, s, b_value * math.log(L), s - sub])
    return ["L", "S_numeric", "B_lnL", "S_minus_subleading"], rows


def _reproduce_tables(figure: str) -> tuple[list[str], list[list], str]:
    """(header, rows, gnuplot snippet body) for each canned figure."""
    if figure == "3a":  # alpha1 < alpha2 at h=1: area law, constant fit
        pts = _scan_entropy(1.5, 1.8, 1.0, 1, _OCTAVES)
        fit = analysis.fit_log_plus_subleading(pts, b_fixed=0.0)
        rows = [[L, s, fit.c1 + fit.c2 * L ** (-fit.c3)] for L, s in pts]
        return (["L", "S_numeric", "const_plus_subleading_fit"], rows,
                "plot DATA using 1:2 with points, DATA using 1:3 with lines")
    if figure == "3b":
        h, r = _figure_weak_scan(1.8, 1.5, 1.0, 1, 1.0 / 6.0)
        return h, r, "plot DATA using 1:4 with points, DATA using 1:3 with lines"
    if figure == "3c":
        b = asymptotics.equal_alpha_log_coefficient(2, 1.5)
        h, r = _figure_weak_scan(1.5, 1.5, 1.0, 2, b)
        return h, r, "plot DATA using 1:4 with points, DATA using 1:3 with lines"
    if figure in ("4a", "4b", "4c"):
        a1, a2 = {"4a": (1.5, 1.8), "4b": (1.8, 1.5), "4c": (1.5, 1.5)}[figure]
        h_crit = -1.0 + 2.0 ** (1.0 - a1)
        hdr, r = _figure_weak_scan(a1, a2, h_crit, 1, 1.0 / 6.0)
        return hdr, r, "plot DATA using 1:4 with points, DATA using 1:3 with lines"
    if figure == "5a":
        rows = []
        for alpha in (0.25, 0.5, 0.75):
            for h in np.round(np.arange(0.05, 2.01, 0.05), 10):
                try:
                    b = asymptotics.strong_regime_B(2, alpha, alpha, float(h), 1024).total_B
                    rows.append([alpha, float(h), b, ""])
                except Exception as exc:
                    rows.append([alpha, float(h), "", f"{type(exc).__name__}"])
        return (["alpha", "h", "B2", "error"], rows,
                "plot for [a in \"0.25 0.5 0.75\"] DATA using 2:($1==a?$3:1/0) with lines")
    if figure == "5b":
        rows = []
        for alpha in (0.1, 0.25, 0.4):
            for L, s in _scan_entropy(alpha, alpha, 0.0, 2, _OCTAVES):
                b = asymptotics.strong_regime_B(2, alpha, alpha, 0.0, 2 * L).total_B
                rows.append([alpha, L, math.log(L), s, b * math.log(L)])
        return (["alpha", "L", "lnL", "S2_numeric", "B2_lnL_prediction"], rows,
                "plot DATA using 3:4 with points, DATA using 3:5 with lines")
    if figure == "6a":
        rows = []
        for alpha in np.round(np.arange(1.0, 2.001, 0.02), 10):
            rows.append([float(alpha),
                         asymptotics.equal_alpha_log_coefficient(2, float(alpha)),
                         asymptotics.equal_alpha_log_coefficient(3, float(alpha)),
                         asymptotics.short_range_coefficient(2),
                         asymptotics.short_range_coefficient(3)])
        return (["alpha", "B2", "B3", "B2_short_range", "B3_short_range"], rows,
                "plot DATA using 1:2 with lines, DATA using 1:3 with lines, "
                "DATA using 1:4 with lines dt 2, DATA using 1:5 with lines dt 2")
    if figure == "6b":
        rows = []
        for alpha in np.round(np.arange(1.0, 2.001, 0.02), 10):
            rows.append([float(alpha),
                         asymptotics.effective_central_charge(2, float(alpha)),
                         asymptotics.effective_central_charge(3, float(alpha)),
                         0.5])
        return (["alpha", "c_eff_nu2", "c_eff_nu3", "c_short_range"], rows,
                "plot DATA using 1:2 with lines, DATA using 1:3 with lines, "
                "DATA using 1:4 with lines dt 2")
    if figure == "7":
        rows = []
        for alpha in (0.25, 0.5, 0.75):
            for h in np.round(np.arange(0.1, 2.01, 0.05), 10):
                if abs(h - 1.0) < 1e-9:
                    continue
                full = asymptotics.strong_regime_B(2, alpha, alpha, float(h), 1024).total_B
                single = asymptotics.single_discontinuity_approx(2, alpha, float(h))
                rows.append([alpha, float(h), full, single])
        return (["alpha", "h", "B2_full", "B2_single_disc"], rows,
                "plot DATA using 2:3 with lines, DATA using 2:4 with lines dt 2")
    raise ValueError(f"unknown figure id {figure!r}")


def cmd_reproduce(args) -> int:
    figure = _merged(args, "figure", None)
    if figure is None:
        raise ValueError("reproduce requires --figure (3a..6b, 7)")
    out = _merged(args, "out", f"figure_{figure}.csv")
    header, rows, plot = _reproduce_tables(str(figure))
    write_csv(out, header, rows)
    if out != "-":
        script = (f"# gnuplot script for figure {figure}\n"
                  f"DATA = '{Path(out).name}'\n"
                  "set datafile separator ','\n"
                  "set key autotitle columnhead\n"
                  f"{plot}\n")
        Path(out).with_suffix(".gp").write_text(script, encoding="utf-8")
    return 0


# --------------------------------------------------------------------------
# argument parsing and dispatch
# --------------------------------------------------------------------------


def _add_common(p: argparse.ArgumentParser):
    p.add_argument("--config", help="flat JSON config; flags override its keys")
    p.add_argument("--alpha1", type=float, default=None)
    p.add_argument("--alpha2", type=float, default=None)
    p.add_argument("--h", type=float, default=None)
    p.add_argument("--n-sites", type=int, default=None)
    p.add_argument("--subsystem", default=None,
                   help="comma-separated subsystem lengths L")
    p.add_argument("--nu", default=None, help="comma-separated Renyi orders")
    p.add_argument("--thermodynamic", action="store_true", default=None)
    p.add_argument("--out", default=None, help="output CSV path ('-' = stdout)")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="lrkitaev",
                                 description="long-range Kitaev chain entanglement toolkit")
    sub = ap.add_subparsers(dest="task")
    for name, fn in (("spectrum", cmd_spectrum), ("entropy-scan", cmd_entropy_scan),
                     ("fh-coeff", cmd_fh_coeff), ("verify", cmd_verify),
                     ("reproduce", cmd_reproduce)):
        p = sub.add_parser(name)
        _add_common(p)
        p.set_defaults(func=fn)
    sub.choices["entropy-scan"].add_argument("--predict", action="store_true", default=None)
    sub.choices["entropy-scan"].add_argument("--zero-mode-filling", type=float, default=None)
    sub.choices["fh-coeff"].add_argument("--h-grid", default=None)
    sub.choices["fh-coeff"].add_argument("--alpha-grid", default=None)
    sub.choices["fh-coeff"].add_argument("--n-modes", type=int, default=None)
    sub.choices["verify"].add_argument("--corrupt", action="store_true",
                                       help=argparse.SUPPRESS)
    sub.choices["reproduce"].add_argument("--figure", default=None,
                                          choices="3a 3b 3c 4a 4b 4c 5a 5b 6a 6b 7".split())
    ap.add_argument("--config", dest="root_config", help=argparse.SUPPRESS)
    return ap


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        cfg = _load_config(getattr(args, "config", None)
                           or getattr(args, "root_config", None))
        args._config = cfg
        if not getattr(args, "task", None):
            task = cfg.get("task")
            if not task:
                ap.print_help()
                return 1
            return main([task] + argv)
        return args.func(args)
    except (ValueError, json.JSONDecodeError) as exc:
        print(f"validation error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 3
    except Exception as exc:
        print(f"computation error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
