"""Command-line front end. Results go to stdout (or ``--output``); errors go to
stderr as a JSON object with a stable ``code`` field."""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field

from . import analysis, one_vi, separation, two_vi
from .bargaining import BargainInputs, nash_fee, oracle_nash_fee
from .errors import ConfigError, ModelError
from .hotelling import ContentAllocation, all_allocations, downstream_equilibrium, oracle_price_equilibrium
from .model import (
    PARAM_FIELDS,
    ModelParams,
    VerticalStructure,
    is_viable,
    range_violations,
    satisfies_no_loss,
    validate,
)
from .verify import report_json, run_verify

COMMANDS = ("validate", "downstream", "bargain", "game", "classify", "thresholds", "welfare", "merger", "sweep", "verify")
MERGER_KINDS = ("A1", "counter-B2", "anticipated-A1", "A1-first", "B2-first")


@dataclass
class RunConfig:
    command: str
    params: ModelParams = field(default_factory=ModelParams)
    structure: VerticalStructure = VerticalStructure.SEPARATION
    grid: list | None = None
    output_format: str = "json"
    output_path: str | None = None
    seed: int = 42
    options: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ConfigError(f"unknown command {self.command!r}", known=list(COMMANDS))
        if (self.grid is not None) != (self.command == "sweep"):
            raise ConfigError("a grid (--vary) is required for sweep and only for sweep")
        if self.output_format not in ("json", "csv"):
            raise ConfigError(f"unknown output format {self.output_format!r}")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ConfigError(message)


def _parse_vary(spec: str) -> tuple[str, list[float]]:
    try:
        name, start, stop, step = spec.split(":")
        values = analysis.grid_values(float(start), float(stop), float(step))
    except ValueError as exc:
        raise ConfigError(f"--vary expects field:start:stop:step, got {spec!r}") from exc
    if name not in PARAM_FIELDS:
        raise ConfigError(f"cannot vary unknown field {name!r}", known=list(PARAM_FIELDS))
    return name, values


def _carriers(text: str) -> set[int]:
    text = text.strip()
    if text in ("", "-", "none"):
        return set()
    try:
        return {int(c) for c in text.replace(",", "")}
    except ValueError as exc:
        raise ConfigError(f"carrier set must be digits from 1, 2 or '-', got {text!r}") from exc


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    g = common.add_argument_group("parameters")
    g.add_argument("--config", help="JSON file with model parameters; flags override it")
    for name in PARAM_FIELDS:
        g.add_argument(f"--{name}", type=float, dest=name)
    common.add_argument("--structure", default="separation", help="separation, one-vi or two-vi")
    common.add_argument("--format", default="json", choices=("json", "csv"), dest="output_format")
    common.add_argument("--output", dest="output_path")

    parser = _Parser(prog="mediabargain", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in ("validate", "game", "classify", "thresholds"):
        sub.add_parser(name, parents=[common])
    p = sub.add_parser("downstream", parents=[common], help="price equilibrium for one or all allocations")
    p.add_argument("--carriers-a", help="platforms carrying A, e.g. 12, 1 or -")
    p.add_argument("--carriers-b", help="platforms carrying B")
    p.add_argument("--oracle", action="store_true", help="also run the best-response oracle")
    p = sub.add_parser("bargain", parents=[common])
    for flag in ("--b-u", "--b-d", "--n-u", "--n-d"):
        p.add_argument(flag, type=float, default=0.0)
    p.add_argument("--oracle", action="store_true")
    p = sub.add_parser("welfare", parents=[common])
    p.add_argument("--label", required=True)
    p = sub.add_parser("merger", parents=[common])
    p.add_argument("--kind", default="A1", choices=MERGER_KINDS)
    p.add_argument("--one-vi-label")
    p.add_argument("--two-vi-label")
    p = sub.add_parser("sweep", parents=[common])
    p.add_argument("--vary", action="append", required=True, help="field:start:stop:step")
    p.add_argument("--quantity", default="region", choices=analysis.QUANTITIES)
    p = sub.add_parser("verify", parents=[common])
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--draws", type=int, default=1000)
    return parser


def config_from_args(argv) -> RunConfig:
    args = build_parser().parse_args(argv)
    values = {}
    if args.config:
        try:
            with open(args.config, encoding="utf-8") as fh:
                values.update(json.load(fh))
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {args.config!r}: {exc}") from exc
    values.update({k: getattr(args, k) for k in PARAM_FIELDS if getattr(args, k) is not None})
    params = ModelParams.from_dict(values)
    try:
        structure = VerticalStructure.parse(args.structure)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    skip = {"config", "structure", "output_format", "output_path", "command", "seed", "vary", *PARAM_FIELDS}
    options = {k: v for k, v in vars(args).items() if k not in skip}
    return RunConfig(
        command=args.command,
        params=params,
        structure=structure,
        grid=[_parse_vary(s) for s in args.vary] if args.command == "sweep" else None,
        output_format=args.output_format,
        output_path=args.output_path,
        seed=getattr(args, "seed", 42),
        options=options,
    )


def _outcome_dict(out) -> dict:
    return {
        "prices": [out.p1, out.p2],
        "shares": [out.q1, out.q2],
        "gross_profits": [out.gross_profit1, out.gross_profit2],
    }


def _downstream(cfg: RunConfig):
    validate(cfg.params)
    a, b = cfg.options.get("carriers_a"), cfg.options.get("carriers_b")
    if (a is None) != (b is None):
        raise ConfigError("give both --carriers-a and --carriers-b, or neither")
    allocs = all_allocations() if a is None else [ContentAllocation.of(_carriers(a), _carriers(b))]
    rows = []
    for alloc in allocs:
        row = {
            "carriers_a": "".join(map(str, sorted(alloc.carriers_a))) or "-",
            "carriers_b": "".join(map(str, sorted(alloc.carriers_b))) or "-",
        }
        out = downstream_equilibrium(cfg.params, alloc)
        row.update(p1=out.p1, p2=out.p2, q1=out.q1, q2=out.q2, profit1=out.gross_profit1, profit2=out.gross_profit2)
        if cfg.options.get("oracle"):
            o = oracle_price_equilibrium(cfg.params, alloc)
            row.update(oracle_p1=o.p1, oracle_p2=o.p2, oracle_q1=o.q1)
        rows.append(row)
    return rows


def _game(cfg: RunConfig) -> dict:
    p, s = cfg.params, cfg.structure
    if s is VerticalStructure.SEPARATION:
        game = separation.assemble_general_game(p)
    elif s is VerticalStructure.TWO_VI:
        game = two_vi.two_vi_game(p)
    else:
        game = one_vi.one_vi_game(p)
    out = {"structure": s.value, "params": p.to_dict(), "game": game.to_dict()}
    if s is VerticalStructure.ONE_VI:
        out["cells"] = [c.to_dict() for c in one_vi.one_vi_cells(p).values()]
    return out


def _classify(cfg: RunConfig) -> dict:
    p, s = cfg.params, cfg.structure
    if s is VerticalStructure.SEPARATION:
        res = separation.classify_region(p)
    elif s is VerticalStructure.TWO_VI:
        res = two_vi.classify_two_vi(p)
    else:
        res = one_vi.classify_one_vi_r0(p) if p.r == 0 else one_vi.classify_one_vi_general(p)
    return {"structure": s.value, **res.to_dict()}


def _merger(cfg: RunConfig) -> dict:
    p, o = cfg.params, cfg.options
    kind, ov, tv = o.get("kind", "A1"), o.get("one_vi_label"), o.get("two_vi_label")
    if kind == "A1":
        rep = analysis.merger_A1(p, ov or "N,E2")
    elif kind == "counter-B2":
        if tv is None:
            raise ConfigError("counter-B2 needs --two-vi-label")
        rep = analysis.counter_merger_B2(p, tv, ov or "N,E2")
    elif kind == "anticipated-A1":
        if tv is None:
            raise ConfigError("anticipated-A1 needs --two-vi-label")
        rep = analysis.anticipated_merger_A1(p, ov or "N,E2", tv)
    elif kind == "A1-first":
        rep = analysis.eventual_structure_A1_first(p, ov, tv)
    else:
        rep = analysis.merger_B2_first(p, ov, tv)
    return {"kind": kind, "params": p.to_dict(), **rep.to_dict()}


def _validate(cfg: RunConfig) -> dict:
    p = cfg.params
    validate(p)
    return {
        "params": p.to_dict(),
        "valid": True,
        "range_violations": range_violations(p),
        "viable": is_viable(p),
        "no_loss": satisfies_no_loss(p),
    }


def _bargain(cfg: RunConfig) -> dict:
    o = cfg.options
    inp = BargainInputs(b_u=o["b_u"], b_d=o["b_d"], n_u=o["n_u"], n_d=o["n_d"], lam=cfg.params.lam)
    out = {
        "lambda": inp.lam,
        "upstream_gain": inp.upstream_gain,
        "downstream_gain": inp.downstream_gain,
        "fee": nash_fee(inp),
    }
    if o.get("oracle"):
        out["oracle_fee"] = oracle_nash_fee(inp)
    return out


def _thresholds(cfg: RunConfig) -> dict:
    p = cfg.params
    th = separation.thresholds(p)
    return {
        "params": p.to_dict(),
        **th.to_dict(),
        "gate_holds": th.gate_holds,
        "two_vi_threshold": two_vi.exclusivity_threshold(p),
        "merger_threshold": analysis.merger_threshold(p) if p.alpha + p.beta > 0 else None,
    }


def run(cfg: RunConfig) -> str:
    """Execute ``cfg`` and return the artifact text."""
    if cfg.output_format == "csv" and cfg.command not in ("sweep", "downstream"):
        raise ConfigError("csv output is available for sweep and downstream only")
    c = cfg.command
    if c == "sweep":
        rows = analysis.sweep(cfg.params, cfg.grid, cfg.options["quantity"], cfg.structure)
        return analysis.rows_to_csv(rows) if cfg.output_format == "csv" else analysis.rows_to_json(rows) + "\n"
    if c == "downstream":
        rows = _downstream(cfg)
        return analysis.rows_to_csv(rows) if cfg.output_format == "csv" else json.dumps(rows, indent=2) + "\n"
    if c == "verify":
        return report_json(run_verify(cfg.seed, cfg.options.get("draws", 1000))) + "\n"
    handlers = {
        "validate": _validate,
        "bargain": _bargain,
        "game": _game,
        "classify": _classify,
        "thresholds": _thresholds,
        "welfare": lambda cfg: analysis.welfare(cfg.params, cfg.structure, cfg.options["label"]).to_dict(),
        "merger": _merger,
    }
    return json.dumps(handlers[c](cfg), indent=2) + "\n"


def main(argv=None) -> int:
    try:
        cfg = config_from_args(sys.argv[1:] if argv is None else argv)
        text = run(cfg)
    except ModelError as exc:
        sys.stderr.write(json.dumps(exc.to_dict()) + "\n")
        return 2 if isinstance(exc, ConfigError) else 1
    if cfg.output_path:
        with open(cfg.output_path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if cfg.command == "verify" and not json.loads(text)["ok"]:
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
