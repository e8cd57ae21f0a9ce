"""Command-line interface.

Subcommands: ``coeff``, ``test``, ``pairwise``, ``statis``, ``mds`` and
``simulate``.  Reports go to stdout (or ``--out``) as JSON, or CSV with
``--format csv``.  Exit status is 0 on success, 2 on invalid input and 3
when a coefficient is numerically undefined for the data.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .coefficients import (
    KINDS,
    coefficient,
    gaussian_kernel,
    hsic,
    linear_kernel,
    median_bandwidth,
)
from .errors import AssocError, NumericalDegeneracy
from .geometry import mds, pairwise_distance, preprocess
from .inference import TestPlan, run_test
from .io import SCHEMA_VERSION, load_matrix, load_table, rows_to_csv, to_json
from .multitable import association_matrix, between_structure, mfa_group_coordinates, statis_compromise
from .simulation import SimulationSpec, power_study, table_study

EXIT_OK, EXIT_INPUT, EXIT_NUMERIC = 0, 2, 3
METHOD_NAMES = {
    "permutation": "permutation_mc",
    "exact": "permutation_exact",
    "pearson3": "pearson3",
}
MATRIX_KINDS = ("mantel", "grv")


def _common(p: argparse.ArgumentParser, seed=True):
    p.add_argument("--out", type=Path, help="write the report here instead of stdout")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    if seed:
        p.add_argument("--seed", type=int, default=0)


def _inputs(p: argparse.ArgumentParser, nargs):
    p.add_argument("inputs", nargs=nargs, type=Path, metavar="CSV")
    p.add_argument("--row-ids", action="store_true", help="first column holds row identifiers")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--matrix", action="store_true",
                   help="inputs are square symmetric dissimilarity matrices")
    g.add_argument("--preprocess", choices=("center", "standardize"),
                   help="column preprocessing (default: center; standardize for rv_adj)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="matassoc", description="Association coefficients between data tables."
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("coeff", help="compute one coefficient between two inputs")
    _inputs(p, 2)
    p.add_argument("--kind", choices=KINDS, default="rv")
    p.add_argument("--alpha", type=float, help="distance exponent for dcov/dcor/dcor_star")
    p.add_argument("--kernel", choices=("linear", "gaussian"), default="linear",
                   help="kernel for hsic")
    p.add_argument("--sigma", type=float, help="gaussian kernel bandwidth (default: median distance)")
    p.add_argument("--normalized", action="store_true", help="normalized hsic (kernel RV)")
    _common(p)

    p = sub.add_parser("test", help="significance test of one coefficient")
    _inputs(p, 2)
    p.add_argument("--kind", choices=KINDS + ("graph",), default="rv")
    p.add_argument("--method", choices=tuple(METHOD_NAMES), default="permutation")
    p.add_argument("--B", type=int, default=999, help="permutations (or moment draws for pearson3)")
    p.add_argument("--alpha", type=float)
    p.add_argument("--k", type=int, default=5, help="neighbors (knn) or tree count (mst)")
    p.add_argument("--graph", choices=("knn", "mst"), default="knn")
    _common(p)

    p = sub.add_parser("pairwise", help="coefficient matrix between K tables")
    _inputs(p, "+")
    p.add_argument("--kind", choices=KINDS, default="rv")
    p.add_argument("--alpha", type=float)
    p.add_argument("--test", action="store_true", help="add permutation p-values per pair")
    p.add_argument("--B", type=int, default=999)
    p.add_argument("--dims", type=int, default=2, help="dimensions of the between-structure map")
    _common(p)

    p = sub.add_parser("statis", help="STATIS compromise of K tables")
    p.add_argument("inputs", nargs="+", type=Path, metavar="CSV")
    p.add_argument("--row-ids", action="store_true")
    p.add_argument("--preprocess", choices=("center", "standardize"), default="center")
    p.add_argument("--dims", type=int, default=2)
    _common(p)

    p = sub.add_parser("mds", help="principal coordinates of a table or distance matrix")
    p.add_argument("inputs", nargs=1, type=Path, metavar="CSV")
    p.add_argument("--row-ids", action="store_true")
    p.add_argument("--matrix", action="store_true", help="input is a distance matrix")
    p.add_argument("--dims", type=int, default=2)
    p.add_argument("--out", type=Path)
    p.add_argument("--format", choices=("json", "csv"), default="csv")
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("simulate", help="null calibration and power simulations")
    p.add_argument("--mode", choices=("table", "power"), default="table")
    p.add_argument("--design", choices=("null_gaussian", "linear_block", "log_square"),
                   default="null_gaussian")
    p.add_argument("--n", type=int, help="sample size (table mode)")
    p.add_argument("--ns", type=int, nargs="+", default=[25, 50, 100, 200],
                   help="sample sizes (power mode)")
    p.add_argument("--p", type=int)
    p.add_argument("--q", type=int)
    p.add_argument("--cross-cov", type=float, default=None)
    p.add_argument("--noise-var", type=float, default=None)
    p.add_argument("--replicates", type=int)
    p.add_argument("--B", type=int)
    p.add_argument("--alphas", type=float, nargs="+", default=[0.1, 0.5, 1.0, 1.5])
    p.add_argument("--paper-scale", action="store_true",
                   help="1000 replicates; B=1000 (table) or B=500 (power)")
    p.add_argument("--out", type=Path)
    p.add_argument("--format", choices=("json", "csv"), default="csv")
    p.add_argument("--seed", type=int, default=0)
    return parser


# ------------------------------------------------------------------ helpers


def _load_tables(args, mode=None):
    mode = mode or getattr(args, "preprocess", None) or "center"
    return [preprocess(load_table(p, args.row_ids), mode) for p in args.inputs]


def _load_pair(args, kind):
    """Tables or matrices as the coefficient requires, plus the
    preprocessing actually applied."""
    if args.matrix:
        if kind not in MATRIX_KINDS + ("graph",):
            raise AssocError(f"--matrix inputs are supported for {', '.join(MATRIX_KINDS)} and graph")
        return [load_matrix(p, args.row_ids) for p in args.inputs], "none"
    mode = args.preprocess or ("standardize" if kind == "rv_adj" else "center")
    tables = _load_tables(args, mode)
    if kind in MATRIX_KINDS + ("graph",):
        return [pairwise_distance(t, 1.0) for t in tables], mode
    return tables, mode


def _config(args) -> dict:
    out = {}
    for k, v in vars(args).items():
        if k in ("out", "format"):
            continue
        if isinstance(v, Path):
            v = str(v)
        elif isinstance(v, list):
            v = [str(x) if isinstance(x, Path) else x for x in v]
        out[k] = v
    return out


def _report(args, result: dict) -> dict:
    return {
        "schema": SCHEMA_VERSION,
        "version": __version__,
        "command": args.command,
        "seed": getattr(args, "seed", None),
        "config": _config(args),
        "result": result,
    }


def _emit(args, text: str):
    if args.out:
        args.out.write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _kv_csv(d: dict) -> str:
    return rows_to_csv([{"field": k, "value": v} for k, v in d.items() if not isinstance(v, (dict, list))])


# ----------------------------------------------------------------- commands


def cmd_coeff(args) -> dict:
    (a, b), mode = _load_pair(args, args.kind)
    meta = {}
    if args.kind == "hsic":
        if args.kernel == "gaussian":
            sx = args.sigma or median_bandwidth(a)
            sy = args.sigma or median_bandwidth(b)
            ka, kb = gaussian_kernel(a, sx), gaussian_kernel(b, sy)
            meta = {"kernel": "gaussian", "bandwidth_x": sx, "bandwidth_y": sy}
        else:
            ka, kb = linear_kernel(a), linear_kernel(b)
            meta = {"kernel": "linear"}
        cv = hsic(ka, kb, normalized=args.normalized)
    else:
        cv = coefficient(args.kind, a, b, alpha=args.alpha)
    result = {"kind": cv.kind, "value": cv.value, "preprocessing": mode}
    if cv.null_expectation is not None:
        result["null_expectation"] = cv.null_expectation
    if cv.alpha is not None:
        result["alpha"] = cv.alpha
    result.update(cv.meta)
    result.update(meta)
    return result


def cmd_test(args) -> dict:
    (a, b), mode = _load_pair(args, args.kind)
    plan = TestPlan(METHOD_NAMES[args.method], args.B, args.seed)
    res = run_test(args.kind, a, b, plan, alpha=args.alpha, k=args.k, graph=args.graph)
    out = res.as_dict()
    out["preprocessing"] = mode
    if args.kind == "graph":
        out["common_edges"] = int(res.observed)
    return out


def cmd_pairwise(args) -> dict:
    if args.matrix:
        raise AssocError("pairwise works on tables")
    mode = args.preprocess or ("standardize" if args.kind == "rv_adj" else "center")
    tables = _load_tables(args, mode)
    labels = [p.stem for p in args.inputs]
    am = association_matrix(tables, args.kind, alpha=args.alpha, labels=labels)
    result = {"kind": am.kind, "labels": list(am.labels), "matrix": am.values, "preprocessing": mode}
    if args.test:
        k = len(tables)
        pv = np.ones((k, k))
        for i in range(k):
            for j in range(i + 1, k):
                plan = TestPlan("permutation_mc", args.B, args.seed)
                pv[i, j] = pv[j, i] = run_test(args.kind, tables[i], tables[j], plan,
                                               alpha=args.alpha).p_value
        result["p_values"] = pv
    emb = between_structure(am, args.dims)
    result["table_coordinates"] = emb.coordinates
    result["eigenvalues"] = emb.eigenvalues
    return result


def cmd_statis(args) -> dict:
    tables = _load_tables(args)
    labels = [p.stem for p in args.inputs]
    model = statis_compromise(tables, labels=labels)
    dims = args.dims
    between = between_structure(model.rv_matrix, dims)
    return {
        "labels": labels,
        "weights": model.weights,
        "rv_matrix": model.rv_matrix.values,
        "compromise_eigenvalues": model.compromise_eigenvalues,
        "table_coordinates": between.coordinates,
        "observation_labels": list(tables[0].row_labels),
        "observation_coordinates": model.compromise_coordinates[:, :dims],
        "group_coordinates": mfa_group_coordinates(tables, model, dims),
    }


def cmd_mds(args) -> dict:
    if args.matrix:
        d = load_matrix(args.inputs[0], args.row_ids)
    else:
        d = pairwise_distance(load_table(args.inputs[0], args.row_ids), 1.0)
    emb = mds(d, args.dims)
    return {"labels": list(d.labels), "coordinates": emb.coordinates, "eigenvalues": emb.eigenvalues}


TABLE_DEFAULTS = {"n": 43, "p": 68, "q": 356, "replicates": 200, "B": 999}
POWER_DEFAULTS = {"p": 5, "q": 5, "replicates": 200, "B": 199}


def cmd_simulate(args):
    defaults = dict(TABLE_DEFAULTS if args.mode == "table" else POWER_DEFAULTS)
    if args.paper_scale:
        defaults.update(replicates=1000, B=1000 if args.mode == "table" else 500)
    cross = args.cross_cov
    if cross is None:
        cross = 0.1 if (args.mode == "power" and args.design == "null_gaussian") else 0.0
    noise = args.noise_var
    if noise is None:
        noise = 0.0 if args.mode == "power" else 0.02
    spec = SimulationSpec(
        design=args.design,
        n=args.n or defaults.get("n", 43),
        p=args.p or defaults["p"],
        q=args.q or defaults["q"],
        cross_cov=cross,
        noise_var=noise,
        replicates=args.replicates or defaults["replicates"],
        B=args.B or defaults["B"],
        seed=args.seed,
    )
    if args.mode == "table":
        study = table_study(spec)
    else:
        study = power_study(spec, ns=tuple(args.ns), alphas=tuple(args.alphas))
    return spec, study


def _simulate_output(args, spec, study) -> str:
    if args.format == "json":
        return to_json({
            "schema": SCHEMA_VERSION,
            "version": __version__,
            "command": "simulate",
            "seed": spec.seed,
            "config": _config(args),
            "spec": spec.as_dict(),
            "rows": study.rows,
            "summary": study.summary,
        })
    if args.mode == "power":
        return rows_to_csv(study.rows)
    columns = list(study.rows[0].keys())
    rows = list(study.rows)
    medians = {"replicate": "median"}
    rejects = {"replicate": "reject_rate_0.05"}
    for c in columns[1:]:
        medians[c] = study.summary[f"median_{c}"]
        rejects[c] = study.summary.get(f"reject_{c}", "")
    return rows_to_csv(rows + [medians, rejects], columns)


def _coords_csv(labels, coords) -> str:
    coords = np.asarray(coords)
    rows = []
    for lab, row in zip(labels, coords):
        r = {"label": lab}
        for j, v in enumerate(row):
            r[f"dim{j + 1}"] = float(v)
        rows.append(r)
    cols = ["label"] + [f"dim{j + 1}" for j in range(coords.shape[1])]
    return rows_to_csv(rows, cols) if rows else ",".join(cols) + "\n"


def _square_csv(labels, m) -> str:
    rows = []
    for lab, row in zip(labels, np.asarray(m)):
        r = {"label": lab}
        r.update({str(l): float(v) for l, v in zip(labels, row)})
        rows.append(r)
    return rows_to_csv(rows, ["label"] + [str(l) for l in labels])


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "simulate":
            spec, study = cmd_simulate(args)
            _emit(args, _simulate_output(args, spec, study))
            return EXIT_OK
        handler = {
            "coeff": cmd_coeff,
            "test": cmd_test,
            "pairwise": cmd_pairwise,
            "statis": cmd_statis,
            "mds": cmd_mds,
        }[args.command]
        result = handler(args)
    except NumericalDegeneracy as exc:
        print(f"matassoc: numerical degeneracy: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (AssocError, OSError) as exc:
        print(f"matassoc: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if args.format == "json":
        _emit(args, to_json(_report(args, result)))
    elif args.command == "mds":
        _emit(args, _coords_csv(result["labels"], result["coordinates"]))
    elif args.command == "pairwise":
        _emit(args, _square_csv(result["labels"], result["matrix"]))
    elif args.command == "statis":
        _emit(args, _coords_csv(result["observation_labels"], result["observation_coordinates"]))
    else:
        flat = {"schema": SCHEMA_VERSION, "version": __version__, "seed": getattr(args, "seed", None)}
        flat.update(result)
        _emit(args, _kv_csv(flat))
    return EXIT_OK


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
