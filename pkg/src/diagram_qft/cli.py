"""Command-line interface: ``diagram-qft {basis,ft,check,sov,bratteli}``.

Exit codes: 0 success / all checks pass, 1 a check failed, 2 usage or config error.
Outputs are UTF-8 JSON (or DOT) with sorted keys, so identical flags give
byte-identical files.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction

from . import diagram as dg
from . import irrep_catalog as ic
from .algebra_core import Field, NotSemisimpleError, ScalarError, parse_rational
from .checks import DECAY_SWEEP, SUITES, run_suite

FAMILIES = ("partition", "half", "brauer", "walled", "symmetric")


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    family: str
    params: object
    d: list
    mode: str
    precision_bits: int | None
    output: str
    basis: str
    cap: int

    @property
    def n(self) -> int:
        return sum(self.params) if self.family == "walled" else self.params

    def field(self, d=None) -> Field:
        return Field(d if d is not None else self.d[0], self.mode, self.precision_bits)


def _parse_ds(text: str | None) -> list[Fraction]:
    if not text:
        return []
    try:
        return [parse_rational(tok) for tok in text.split(",") if tok.strip()]
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"cannot parse d list {text!r}") from exc


def config_from_args(args: argparse.Namespace, default_output: str) -> RunConfig:
    family = args.family
    if family == "walled":
        if args.r is None or args.s is None:
            raise ConfigError("walled family needs --r and --s")
        params = (args.r, args.s)
    else:
        if args.n is None:
            raise ConfigError(f"{family} family needs --n")
        params = args.n
    n = sum(params) if family == "walled" else params
    if n < 0 or (family == "walled" and min(params) < 0):
        raise ConfigError("sizes must be nonnegative")
    if family == "half" and n < 1:
        raise ConfigError("the half partition algebra needs n >= 1")
    size = dg.basis_size(family, n, params if family == "walled" else None)
    if size > args.cap:
        raise ConfigError(f"basis of {size} diagrams exceeds cap {args.cap}")
    ds = _parse_ds(getattr(args, "d", None))
    return RunConfig(family, params, ds, getattr(args, "mode", "float"), args.precision_bits, args.output or default_output, getattr(args, "basis", "orthogonal"), args.cap)


def _write(cfg: RunConfig, text: str) -> None:
    if cfg.output == "-":
        sys.stdout.write(text)
        return
    with open(cfg.output, "w", encoding="utf-8") as fh:
        fh.write(text)


def _dump(obj) -> str:
    return json.dumps(obj, indent=1, sort_keys=True, ensure_ascii=False) + "\n"


def _params_json(cfg: RunConfig):
    return list(cfg.params) if isinstance(cfg.params, tuple) else cfg.params


# ------------------------------------------------------------------ commands


def cmd_basis(cfg: RunConfig) -> int:
    wall = cfg.params if cfg.family == "walled" else None
    basis = dg.enumerate_basis(cfg.family, cfg.n, wall=wall, cap=cfg.cap)
    counts = ic.count_diagrams_by_pn(cfg.family, cfg.params)
    out = {
        "family": cfg.family,
        "params": _params_json(cfg),
        "count": len(basis),
        "count_by_pn": {str(k): v for k, v in counts.items()},
        "diagrams": [str(D) for D in basis],
        "blocks": [D.to_json()["blocks"] for D in basis],
    }
    _write(cfg, _dump(out))
    print(f"{cfg.family} {_params_json(cfg)}: {len(basis)} diagrams", file=sys.stderr)
    return 0


def _generator_matrices(cfg: RunConfig, field: Field, forms) -> dict:
    from .matrix_forms import partition_generator_matrix

    out: dict = {}
    n = cfg.n
    wall = cfg.params if cfg.family == "walled" else None
    for lab in forms.labels:
        mats = {}
        for kind in ("s", "b", "p", "e", "f"):
            for i in range(1, n + 1):
                try:
                    D = dg.generator(kind, i, n, cfg.family, wall)
                except dg.DiagramError:
                    continue
                if D not in forms._all(lab):
                    continue
                if cfg.basis == "seminormal" and kind in ("b", "p"):
                    M = partition_generator_matrix(lab, kind, i, n, field, basis="seminormal", family=cfg.family)
                    mats[f"{kind}{i}"] = [[field.fmt(Fraction(x)) if field.mode == "exact" else str(x) for x in row] for row in M]
                else:
                    M = forms.matrix(lab, D)
                    mats[f"{kind}{i}"] = [[field.fmt(x) for x in row] for row in M]
        out[ic.label_str(lab)] = mats
    return out


def cmd_ft(cfg: RunConfig, diagram_basis: str) -> int:
    from .fourier import FourierData

    if cfg.basis == "seminormal" and cfg.family not in ("partition", "half"):
        raise ConfigError("seminormal matrices are available for the partition families only")
    if len(cfg.d) != 1:
        raise ConfigError("ft needs exactly one value of --d")
    field = cfg.field()
    data = FourierData(cfg.family, cfg.params, field, basis=diagram_basis)
    out = data.report()
    out["irrep_basis"] = cfg.basis
    out["generators"] = _generator_matrices(cfg, field, data.forms)
    _write(cfg, _dump(out))
    return 0


def cmd_check(cfg: RunConfig, suite: str) -> int:
    ds = cfg.d or list(DECAY_SWEEP)
    result = run_suite(suite, cfg.family, cfg.params, d=ds[0], ds=ds, precision_bits=cfg.precision_bits)
    out = {"family": cfg.family, "params": _params_json(cfg)} | result.to_json()
    _write(cfg, _dump(out))
    print(f"{suite}: {'pass' if result.passed else 'FAIL'}", file=sys.stderr)
    return 0 if result.passed else 1


def cmd_sov(cfg: RunConfig) -> int:
    from .qft_sov import sov_report

    if cfg.mode != "float":
        raise ConfigError("sov runs in float mode")
    if cfg.family == "half":
        raise ConfigError("sov supports the partition, brauer, walled and symmetric families")
    ds = cfg.d or list(DECAY_SWEEP)
    report = sov_report(cfg.family, cfg.params, ds, cfg.precision_bits)
    _write(cfg, _dump(report))
    return 0


def cmd_bratteli(cfg: RunConfig, fmt: str) -> int:
    graph = ic.bratteli(cfg.family, cfg.params)
    if fmt == "dot":
        _write(cfg, ic.bratteli_dot(graph))
        return 0
    chain = graph.chain
    levels = [[ic.label_str(lab) for lab in ic.level_labels(chain, k)] for k in range(chain.length + 1)]
    top = ic.level_labels(chain, chain.length)
    out = {
        "family": cfg.family,
        "params": _params_json(cfg),
        "steps": list(chain.steps),
        "levels": levels,
        "dims": {ic.label_str(lab): len(ic.paths_to(chain, lab)) for lab in top},
    }
    _write(cfg, _dump(out))
    return 0


# ------------------------------------------------------------------ parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="diagram-qft", description="Diagram algebra Fourier transforms.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, default_out, with_d=True):
        p.add_argument("--family", required=True, choices=FAMILIES)
        p.add_argument("--n", type=int, help="number of columns (non-walled families)")
        p.add_argument("--r", type=int, help="left columns (walled)")
        p.add_argument("--s", type=int, help="right columns (walled)")
        p.add_argument("--precision-bits", type=int, default=None, help="float precision (default: DA_PRECISION_BITS or 256)")
        p.add_argument("--cap", type=int, default=dg.DEFAULT_CAP, help="largest basis size accepted")
        p.add_argument("-o", "--output", default=None, help=f"output path, '-' for stdout (default {default_out})")
        if with_d:
            p.add_argument("--d", help="d value(s), comma separated rationals like 10000 or 1/3")
            p.add_argument("--mode", choices=("float", "exact"), default="float")

    p = sub.add_parser("basis", help="list the diagram basis")
    common(p, "basis.json", with_d=False)

    p = sub.add_parser("ft", help="Fourier basis and transform matrices")
    common(p, "ft.json")
    p.add_argument("--basis", choices=("orthogonal", "seminormal"), default="orthogonal", help="irrep matrix form")
    p.add_argument("--diagram-basis", choices=("unscaled", "scaled"), default="unscaled", help="computational basis")

    p = sub.add_parser("check", help="run an invariant suite")
    common(p, "-")
    p.add_argument("--suite", required=True, choices=SUITES)

    p = sub.add_parser("sov", help="simulate the separation-of-variables transform")
    common(p, "sov-report.json")

    p = sub.add_parser("bratteli", help="Bratteli diagram of the subalgebra chain")
    common(p, "-", with_d=False)
    p.add_argument("--format", choices=("dot", "json"), default="dot")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    defaults = {"basis": "basis.json", "ft": "ft.json", "check": "-", "sov": "sov-report.json", "bratteli": "-"}
    try:
        cfg = config_from_args(args, defaults[args.command])
        if args.command in ("ft",) and not cfg.d:
            raise ConfigError("ft needs --d")
        if args.command == "basis":
            return cmd_basis(cfg)
        if args.command == "ft":
            return cmd_ft(cfg, args.diagram_basis)
        if args.command == "check":
            return cmd_check(cfg, args.suite)
        if args.command == "sov":
            return cmd_sov(cfg)
        return cmd_bratteli(cfg, args.format)
    except (ConfigError, ScalarError, NotSemisimpleError, dg.DiagramError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
