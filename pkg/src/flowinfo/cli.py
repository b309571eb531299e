"""``flowinfo`` command line.

Exit codes: 0 success, 1 identity violation, 2 parse error,
3 degenerate input, 4 dimension mismatch.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import __version__
from ._backend import BACKEND
from .dist import RNG_ALGORITHM, DistributionError, sample_joint
from .flownet import VITALITY_READING, NetworkError, indices, prune_isolated, to_joint
from .harness import HarnessConfig, parse_sizes, run_checks
from .infometrics import information_content, surprisal_bound_counterexample
from .logunits import (
    DIMENSIONLESS,
    DimQuantity,
    DimensionError,
    FlowInfoQuantity,
    InfoQuantity,
    ParseError,
    UnitError,
    convert_flow_info,
    convert_info,
    describe_dimension,
    format_dimension,
    parse_info_unit,
    parse_unit,
)
from .netfile import NetFileError, read_network_file

EXIT_OK, EXIT_VIOLATION, EXIT_PARSE, EXIT_DEGENERATE, EXIT_DIMENSION = 0, 1, 2, 3, 4
SCHEMA_VERSION = 1
JSON_PRECISION = 17


def fmt(v: float, precision: int) -> str:
    if math.isinf(v):
        return "+inf" if v > 0 else "-inf"
    if v == 0:
        return "0"
    # round to significant figures, then print without a needless exponent
    return f"{float(f'{v:.{precision}g}'):.15g}"


def _json_num(v: float):
    # JSON has no infinity; surprisal can be +inf
    if math.isinf(v):
        return "+inf" if v > 0 else "-inf"
    return float(f"{v:.{JSON_PRECISION}g}")


def _metadata() -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "generator": f"flowinfo {__version__}",
        "kernel_backend": BACKEND,
        "rng": RNG_ALGORITHM,
    }


def _emit_json(doc: dict, out) -> None:
    json.dump(doc, out, indent=2)
    out.write("\n")


def _fail(code: int, message: str) -> int:
    print(f"flowinfo: {message}", file=sys.stderr)
    return code


def _load(path: str, prune: bool = False):
    net = read_network_file(path).to_network()
    return prune_isolated(net) if prune else net


def _guarded(fn):
    """Map library errors to the documented exit codes."""

    def wrapper(args) -> int:
        try:
            return fn(args)
        except (NetFileError, ParseError, UnitError) as err:
            return _fail(EXIT_PARSE, str(err))
        except OSError as err:
            return _fail(EXIT_PARSE, f"cannot read input: {err}")
        except (NetworkError, DistributionError) as err:
            return _fail(EXIT_DEGENERATE, str(err))
        except DimensionError as err:
            return _fail(EXIT_DIMENSION, str(err))
        except ValueError as err:
            return _fail(EXIT_PARSE, str(err))

    return wrapper


# analyze ----------------------------------------------------------------------


def _report_doc(rep, source: str) -> dict:
    m = rep.measures
    asym = rep.asymmetry

    def info(q):
        return {"value": _json_num(q.value), "unit": q.unit.symbol}

    def flow(q):
        return {"value": _json_num(q.value), "unit": q.unit_string}

    return {
        **_metadata(),
        "input": source,
        "unit": m.unit.symbol,
        "t_total": {"value": _json_num(rep.t_total.value), "unit": rep.t_total.unit_string},
        "measures": {
            "h_y": info(m.h_y),
            "h_z": info(m.h_z),
            "h_joint": info(m.h_joint),
            "mi": info(m.mi),
            "h_y_given_z": info(m.h_y_given_z),
            "h_z_given_y": info(m.h_z_given_y),
            "vi": info(m.vi),
        },
        "ascendency": flow(rep.ascendency),
        "reserve": flow(rep.reserve),
        "capacity": flow(rep.capacity),
        "asymmetry": {
            asym.labels[0]: info(asym.h_y_given_z),
            asym.labels[1]: info(asym.h_z_given_y),
            "ratio": [_json_num(x) for x in asym.ratio],
            "smaller": asym.label_of(asym.smaller),
            "degenerate": asym.degenerate,
        },
        "vitality": {"n": _json_num(rep.vitality_n), "c": _json_num(rep.vitality_c), "reading": VITALITY_READING},
        "residuals_bits": {k: _json_num(v) for k, v in m.residuals.as_dict().items()},
    }


def _report_text(rep, source: str, p: int) -> str:
    m = rep.measures
    u = m.unit.symbol
    asym = rep.asymmetry
    ratio = asym.ratio_text(p)
    if asym.degenerate:
        ratio += " (degenerate)"
    rows = [
        ("input", source),
        ("T..", f"{fmt(rep.t_total.value, p)} {rep.t_total.unit_string}".rstrip()),
        ("H", f"{fmt(m.h_joint.value, p)} {u}"),
        ("X", f"{fmt(m.mi.value, p)} {u}"),
        ("Psi", f"{fmt(m.vi.value, p)} {u}"),
        ("H(Y)", f"{fmt(m.h_y.value, p)} {u}"),
        ("H(Z)", f"{fmt(m.h_z.value, p)} {u}"),
        ("A", f"{fmt(rep.ascendency.value, p)} {rep.ascendency.unit_string}"),
        ("Phi", f"{fmt(rep.reserve.value, p)} {rep.reserve.unit_string}"),
        ("C", f"{fmt(rep.capacity.value, p)} {rep.capacity.unit_string}"),
        (f"H({asym.labels[0]})", f"{fmt(asym.h_y_given_z.value, p)} {u}"),
        (f"H({asym.labels[1]})", f"{fmt(asym.h_z_given_y.value, p)} {u}"),
        ("asymmetry", f"{ratio}, smaller side {asym.label_of(asym.smaller)}"),
        ("n", fmt(rep.vitality_n, p)),
        ("c", fmt(rep.vitality_c, p)),
        ("residual chain rule", f"{m.residual_chain_rule:.3g} bit"),
        ("residual H=X+Psi", f"{m.residual_decomposition:.3g} bit"),
        ("vitality reading", VITALITY_READING),
        ("generator", f"flowinfo {__version__} (schema {SCHEMA_VERSION}, kernels {BACKEND}, rng {RNG_ALGORITHM})"),
    ]
    width = max(len(k) for k, _ in rows)
    return "\n".join(f"{k.ljust(width)}  {v}" for k, v in rows)


@_guarded
def cmd_analyze(args) -> int:
    unit = parse_info_unit(args.info_unit)
    net = _load(args.input, args.prune_isolated)
    rep = indices(net, unit)
    if args.json:
        _emit_json(_report_doc(rep, args.input), sys.stdout)
    else:
        print(_report_text(rep, args.input, args.precision))
    return EXIT_OK


# convert ----------------------------------------------------------------------


@_guarded
def cmd_convert(args) -> int:
    value = args.value
    src_dim, src_scale, src_info = parse_unit(args.from_unit)
    dst_dim, dst_scale, dst_info = parse_unit(args.to_unit)
    if dst_info is not None and dst_dim == DIMENSIONLESS and dst_scale == 0:
        # a bare information unit as target: change only the information unit
        dst_dim, dst_scale = src_dim, src_scale
    src_desc = describe_dimension(src_dim, src_info is not None)
    dst_desc = describe_dimension(dst_dim, dst_info is not None)
    if (src_info is None) != (dst_info is None) or src_dim != dst_dim:
        return _fail(
            EXIT_DIMENSION,
            f"dimension mismatch: {args.from_unit!r} is {src_desc} but {args.to_unit!r} is {dst_desc}; "
            "a flow and a flow-information product are not comparable",
        )
    if src_info is not None and src_dim == DIMENSIONLESS and src_scale == 0 and dst_scale == 0:
        q = convert_info(InfoQuantity(value, src_info), dst_info)
        out_value, out_unit = q.value, dst_info.symbol
    elif src_info is not None:
        q = convert_flow_info(FlowInfoQuantity(value, src_info, src_scale, src_dim), dst_info, dst_scale)
        out_value, out_unit = q.value, q.unit_string
    else:
        q = DimQuantity(value, src_scale, src_dim).to_scale(dst_scale)
        out_value, out_unit = q.value, format_dimension(dst_dim, dst_scale)
    if args.json:
        _emit_json({**_metadata(), "value": _json_num(out_value), "unit": out_unit, "dimension": dst_desc}, sys.stdout)
    else:
        print(f"{fmt(out_value, args.precision)} {out_unit}".rstrip())
    return EXIT_OK


# check ------------------------------------------------------------------------


def cmd_check(args) -> int:
    try:
        sizes = parse_sizes(args.sizes)
        config = HarnessConfig(args.seed, args.trials, sizes, args.tolerance_bits)
    except ValueError as err:
        return _fail(EXIT_PARSE, str(err))
    result = run_checks(config)
    if args.json:
        doc = {
            **_metadata(),
            "seed": config.seed,
            "trials": config.trials,
            "sizes": [f"{r}x{c}" for r, c in config.sizes],
            "tolerance_bits": config.tolerance_bits,
            "passed": result.passed,
            "checks": [
                {
                    "name": c.name,
                    "passed": c.passed,
                    "max_residual": _json_num(c.max_residual),
                    "residual_unit": c.unit,
                    "tolerance": c.tolerance,
                    "trials": c.trials,
                    **({"counterexample": c.first_violation.tolist()} if not c.passed else {}),
                }
                for c in result.checks
            ],
        }
        if not result.passed:
            doc["reproduce"] = config.command_line()
        _emit_json(doc, sys.stdout)
    else:
        width = max(len(c.name) for c in result.checks)
        for c in result.checks:
            status = "PASS" if c.passed else "FAIL"
            print(
                f"{status}  {c.name.ljust(width)}  max residual {c.max_residual:.3e} {c.unit}"
                f"  (tol {c.tolerance:.1e}, {c.trials} trials)"
            )
        for c in result.failures():
            print(f"\ncounterexample for {c.name}:")
            print(np.array2string(c.first_violation, precision=17, floatmode="maxprec", max_line_width=120))
        print(f"\nseed {config.seed}, rng {RNG_ALGORITHM}, kernels {BACKEND}")
        if not result.passed:
            print(f"reproduce: {config.command_line()}")
        print("all identities hold" if result.passed else f"{len(result.failures())} check(s) failed")
    return EXIT_OK if result.passed else EXIT_VIOLATION


# counterexample ---------------------------------------------------------------


@_guarded
def cmd_counterexample(args) -> int:
    unit = parse_info_unit(args.info_unit)
    if args.random:
        (rows, cols), = parse_sizes(args.random)
        J = sample_joint(rows, cols, args.seed)
        source = f"random {rows}x{cols} seed {args.seed}"
    elif args.input:
        J = to_joint(_load(args.input))
        source = args.input
    else:
        return _fail(EXIT_PARSE, "give an input file or --random ROWSxCOLS")
    gap, (i, j) = surprisal_bound_counterexample(J)
    p_ij = float(J.probs[i, j])
    p_ind = float(J.row_probs[i] * J.col_probs[j])
    s = information_content(p_ij, unit)
    s_star = information_content(min(p_ind, 1.0), unit)
    found = gap < 0
    p = args.precision
    if args.json:
        _emit_json(
            {
                **_metadata(),
                "input": source,
                "min_gap": _json_num(gap),
                "cell": [i, j],
                "cell_labels": [J.row_labels[i], J.col_labels[j]],
                "p_joint": _json_num(p_ij),
                "p_independent": _json_num(p_ind),
                "surprisal": _json_num(s.value),
                "claimed_maximum": _json_num(s_star.value),
                "unit": unit.symbol,
                "counterexample": found,
            },
            sys.stdout,
        )
        return EXIT_OK
    print(f"input          {source}")
    print(f"min gap        {fmt(gap, p)} at cell ({i}, {j}) [{J.row_labels[i]} -> {J.col_labels[j]}]")
    print(f"p_ij           {fmt(p_ij, p)}")
    print(f"p_i. * p_.j    {fmt(p_ind, p)}")
    print(f"s_ij           {fmt(s.value, p)} {unit.symbol}")
    print(f"s*_ij          {fmt(s_star.value, p)} {unit.symbol}  (claimed maximum, independence)")
    if found:
        print("s_ij > s*_ij: joint surprisal is not bounded by its value under independence")
    else:
        print("no counterexample: exactly independent")
    return EXIT_OK


# vitality ---------------------------------------------------------------------


def cmd_vitality(args) -> int:
    rows, status = [], EXIT_OK
    for path in args.inputs:
        try:
            n, c = _vitality_of(path)
        except (NetFileError, ParseError, OSError) as err:
            print(f"flowinfo: {err}", file=sys.stderr)
            status = status or EXIT_PARSE
            continue
        except (NetworkError, DistributionError) as err:
            print(f"flowinfo: {path}: {err}", file=sys.stderr)
            status = status or EXIT_DEGENERATE
            continue
        rows.append((Path(path).stem, n, c))
    if args.json:
        _emit_json(
            {**_metadata(), "reading": VITALITY_READING, "rows": [{"name": a, "n": _json_num(n), "c": _json_num(c)} for a, n, c in rows]},
            sys.stdout,
        )
    else:
        print("name\tn\tc")
        for name, n, c in rows:
            print(f"{name}\t{fmt(n, args.precision)}\t{fmt(c, args.precision)}")
    return status


def _vitality_of(path):
    rep = indices(_load(path))
    return rep.vitality_n, rep.vitality_c


# parser -----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="flowinfo", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"flowinfo {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, unit=True):
        if unit:
            p.add_argument("--info-unit", default="bit", help="bit, nat, dB, byte, cent, CDROM or custom:<base>")
        p.add_argument("--precision", type=int, default=3, help="significant figures in text output")
        p.add_argument("--json", action="store_true", help="emit one JSON document instead of text")

    p = sub.add_parser("analyze", help="information measures and indices of a flow network")
    p.add_argument("input")
    p.add_argument("--prune-isolated", action="store_true", help="drop nodes without any flow")
    common(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("convert", help="convert an information or flow-information quantity")
    p.add_argument("value", type=float)
    p.add_argument("from_unit")
    p.add_argument("to_unit")
    common(p, unit=False)
    p.set_defaults(func=cmd_convert)

    p = sub.add_parser("check", help="randomized verification of the information identities")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=10_000)
    p.add_argument("--sizes", default="2x2,3x3,4x7,10x10")
    p.add_argument("--tolerance-bits", type=float, default=1e-9)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("counterexample", help="show a cell where joint surprisal exceeds its independent value")
    p.add_argument("input", nargs="?")
    p.add_argument("--random", metavar="ROWSxCOLS")
    p.add_argument("--seed", type=int, default=0)
    common(p)
    p.set_defaults(func=cmd_counterexample)

    p = sub.add_parser("vitality", help="window-of-vitality coordinates (n, c), one row per network")
    p.add_argument("inputs", nargs="+")
    common(p, unit=False)
    p.set_defaults(func=cmd_vitality)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
