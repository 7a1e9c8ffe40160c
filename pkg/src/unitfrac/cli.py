"""Command line front end: one subcommand per module, machine-readable
output, and reproducible runs.

Every run resolves its arguments into a normalized config and prints that
config as a REPLAY line on stderr; feeding the line to the replay
subcommand reproduces the stdout bytes exactly (results go to stdout,
logs and timing to stderr, so stdout stays deterministic). Exit codes:
0 success, 1 validation or usage error, 2 capacity refusal. Output is
plain text with no color codes, so NO_COLOR needs no special handling.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from dataclasses import asdict, dataclass

from . import egyptian, entropy, fourier, sieve, solver
from .core import (
    CapacityError,
    ValidationError,
    format_rational,
    parse_rational,
    parse_unit_set,
)

__all__ = ["main", "dispatch"]

_REQUIRED = object()


class _Parser(argparse.ArgumentParser):
    """argparse exits 2 on usage errors; the exit-code contract reserves 2
    for capacity refusals, so usage problems exit 1 instead."""

    def error(self, message: str):  # noqa: D401
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


@dataclass
class _Result:
    payload: object
    rows: list[dict] | None = None
    columns: list[str] | None = None
    csv_text: str | None = None


# ---------------------------------------------------------------------------
# handlers


def _build_plan(params: dict) -> fourier.SamplingPlan:
    support = parse_unit_set(params["support"])
    Q = fourier.plan_modulus(support)
    p_text = params["p"]
    parts = [float(tok) for tok in str(p_text).split(",")]
    if len(parts) == 1:
        probs = {n: parts[0] for n in support}
    elif len(parts) == len(support):
        probs = dict(zip(support, parts))
    else:
        raise ValidationError(
            f"--p needs 1 or {len(support)} comma-separated values, got {len(parts)}"
        )
    x_text = params["x"]
    if x_text is None:
        x = Q
    else:
        r = parse_rational(str(x_text))
        scaled = r * Q
        if scaled.denominator != 1:
            raise ValidationError(f"x = {x_text} does not give an integer multiple of 1/{Q}")
        x = int(scaled)
        if not 0 <= x <= Q:
            raise ValidationError(f"x/Q = {x_text} must lie in [0, 1]")
    return fourier.SamplingPlan(support=support, probabilities=probs, target_x=x, modulus_Q=Q)


def _h_solve(params: dict, seed: int) -> _Result:
    ground = parse_unit_set(params["set"])
    target = parse_rational(params["target"])
    mode = params["mode"]
    cap = params["cap"] if params["cap"] is not None else solver.FIND_CAP
    stats: dict = {}
    payload: dict = {"set": str(ground), "target": format_rational(target), "mode": mode}
    if mode == "find":
        witness = solver.find_subset(ground, target, cap=cap, stats=stats)
        payload |= {
            "found": witness is not None,
            "witness": str(witness) if witness is not None else None,
            "nodes_explored": stats.get("nodes", 0),
        }
    elif mode == "count":
        payload |= {"count": solver.count_subsets(ground, target, cap=cap, stats=stats)}
    elif mode == "count-at-most":
        payload |= {"count_at_most": solver.count_subsets_at_most(ground, target, cap=cap, stats=stats)}
    elif mode == "exists":
        payload |= {"exists": solver.subset_exists(ground, target, cap=cap, stats=stats)}
    elif mode == "enumerate":
        witnesses = solver.enumerate_subsets(ground, target, cap=min(cap, solver.ENUMERATE_CAP))
        payload |= {"count": len(witnesses), "witnesses": [str(w) for w in witnesses]}
    else:
        raise ValidationError(f"unknown solve mode {mode!r}")
    return _Result(payload)


def _h_extremal(params: dict, seed: int) -> _Result:
    op, N = params["op"], params["N"]
    cap = params["cap"]
    if op == "lambda":
        result = solver.max_avoiding_sum(N, cap=cap if cap is not None else solver.EXTREMAL_CAP)
        return _Result(result.to_dict() | {"op": op})
    if op == "largest":
        result = solver.largest_avoiding_set(N, cap=cap if cap is not None else solver.EXTREMAL_CAP)
        return _Result(result.to_dict() | {"op": op})
    if op == "blocked-start":
        t, witnesses = solver.blocked_start_trace(
            N, cap=cap if cap is not None else solver.BLOCKED_START_CAP
        )
        return _Result(
            {
                "op": op,
                "N": N,
                "least_blocked_start": t,
                "witnesses": {str(k): str(v) for k, v in sorted(witnesses.items())},
            }
        )
    raise ValidationError(f"unknown extremal op {op!r}")


def _h_constants(params: dict, seed: int) -> _Result:
    tol = params["tol"]
    constants = entropy.solve_lambda_star(tol)
    return _Result(constants.to_dict() | {"requested_tol": tol})


def _h_growth(params: dict, seed: int) -> _Result:
    rows = entropy.growth_table(params["n_max"], allow_large=params["allow_large"])
    payload: dict = {"rows": [asdict(r) for r in rows]}
    if params["figure"]:
        from .plotting import growth_figure

        payload["figure"] = growth_figure(rows, params["figure"])
    return _Result(
        payload,
        rows=[asdict(r) for r in rows],
        columns=["N", "count", "log_count_over_N", "upper_bound_log_over_N"],
        csv_text=entropy.growth_csv(rows),
    )


def _h_fourier(params: dict, seed: int) -> _Result:
    op = params["op"]
    if op == "probability":
        plan = _build_plan(params)
        report = fourier.integrality_report(plan)
        payload = {
            "op": op,
            "support": str(plan.support),
            "x": plan.target_x,
            "Q": report["Q"],
            "probability": report["probability"],
            "imag_residual": report["imag_residual"],
            "h0_term": report["h0_term"],
            "major_arc_value": fourier.major_arc_partial_sum(plan, min(plan.support.elements)),
        }
        if len(plan.support) <= fourier.BRUTE_FORCE_CAP:
            brute = fourier.brute_force_integrality(plan)
            payload["brute_force"] = brute
            payload["abs_error"] = abs(report["probability"] - brute)
        return _Result(payload)
    if op == "major-arc":
        plan = _build_plan(params)
        M = params["M"]
        if M is None:
            raise ValidationError("major-arc requires --M")
        return _Result(
            {
                "op": op,
                "Q": plan.modulus_Q,
                "M": M,
                "major_arc_value": fourier.major_arc_partial_sum(plan, M),
                "h0_term": fourier.h_zero_term(plan),
            }
        )
    if op == "residues":
        profile = fourier.residue_profile(
            parse_unit_set(params["set"]), params["h"], params["K"], params["t"]
        )
        return _Result(
            {
                "op": op,
                "h": profile.h,
                "residues": {str(n): r for n, r in sorted(profile.residues.items())},
                "poor_set": list(profile.poor_set),
                "window": list(profile.window),
            }
        )
    if op == "taylor":
        return _Result(fourier.taylor_fact_sweep(params["grid"]).to_dict() | {"op": op})
    if op == "azuma":
        c = [float(tok) for tok in str(params["c"]).split(",")]
        report = fourier.azuma_bound_check(c, params["threshold"], params["trials"], seed=seed)
        return _Result(report.to_dict() | {"op": op, "seed": seed})
    if op == "plan":
        plan = entropy.sampling_plan(params["N"], params["S"])
        Q = plan.modulus_Q
        ps = list(plan.probabilities.values())
        payload = {
            "op": op,
            "N": params["N"],
            "S": params["S"],
            "support_size": len(plan.support),
            "support": str(plan.support),
            "modulus_digits": len(str(Q)),
            "modulus_Q": str(Q) if len(str(Q)) <= 60 else None,
            "min_p": min(ps),
            "max_p": max(ps),
            "clamp": entropy.clamp_violations(plan, params["N"]),
        }
        return _Result(payload)
    if op == "monte-carlo":
        plan = entropy.sampling_plan(params["N"], params["S"])
        summary = fourier.monte_carlo_integrality(plan, params["trials"], seed=seed)
        return _Result(summary | {"op": op, "N": params["N"], "S": params["S"], "seed": seed})
    raise ValidationError(f"unknown fourier op {op!r}")


def _h_sieve(params: dict, seed: int) -> _Result:
    op = params["op"]
    if op == "mertens":
        N = params["N"]
        payload = {"op": op, "N": N, "mertens_sum": sieve.mertens_sum(N)}
        if N >= 3:
            payload["residual"] = sieve.mertens_residual(N)
        return _Result(payload)
    if op == "omega-tail":
        return _Result(
            {
                "op": op,
                "N": params["N"],
                "threshold": params["threshold"],
                "count": sieve.omega_tail_count(params["N"], params["threshold"]),
            }
        )
    if op == "large-pp":
        return _Result(
            {
                "op": op,
                "N": params["N"],
                "t": params["t"],
                "count": sieve.large_prime_power_count(params["N"], params["t"]),
            }
        )
    if op == "survivors":
        primes = [int(tok) for tok in str(params["primes"]).split(",") if tok] if params["primes"] else []
        report = sieve.sieve_survivors(params["start"], params["length"], primes)
        return _Result(report.to_dict() | {"op": op, "primes": primes})
    if op == "lemma-matrix":
        reports = sieve.fundamental_lemma_reports()
        rows = []
        for (start, length, bound), rep in zip(sieve.FUNDAMENTAL_LEMMA_MATRIX, reports):
            rows.append(rep.to_dict() | {"prime_bound": bound})
        columns = [
            "interval_start",
            "interval_length",
            "prime_bound",
            "survivor_count",
            "predicted_count",
            "ratio",
        ]
        return _Result({"op": op, "rows": rows}, rows=rows, columns=columns)
    raise ValidationError(f"unknown sieve op {op!r}")


def _h_expand(params: dict, seed: int) -> _Result:
    op = params["op"]
    if op == "greedy":
        expansion = egyptian.greedy_expand(params["a"], params["b"], cap=params["cap"])
        return _Result(expansion.to_dict() | {"op": op})
    if op == "smooth":
        expansion = egyptian.smooth_expand(params["a"], params["b"], S=params["S"])
        return _Result(expansion.to_dict() | {"op": op})
    if op == "from":
        expansion = egyptian.expansion_from(
            params["t"], params["N"], allow_heuristic=params["allow_heuristic"]
        )
        return _Result(
            {
                "op": op,
                "t": params["t"],
                "N": params["N"],
                "exists": expansion is not None,
                "expansion": expansion.to_dict() if expansion is not None else None,
            }
        )
    if op == "certificate":
        certificate = egyptian.obstruction_certificate(params["t"], params["N"])
        return _Result(certificate.to_dict() | {"op": op})
    raise ValidationError(f"unknown expand op {op!r}")


def _h_bench(params: dict, seed: int) -> _Result:
    strategies = tuple(tok for tok in str(params["strategies"]).split(",") if tok)
    rows = egyptian.budget_benchmark(
        params["b_max"], params["samples"], strategies=strategies, seed=seed
    )
    payload: dict = {"rows": rows, "seed": seed}
    if params["figure"]:
        from .plotting import bench_figure

        payload["figure"] = bench_figure(rows, params["figure"])
    columns = [
        "a", "b", "strategy", "terms", "max_denominator",
        "ratio_b", "ratio_blogb", "fallback", "valid",
    ]
    return _Result(payload, rows=rows, columns=columns, csv_text=egyptian.bench_csv(rows))


# schema: key -> (type constructor, default); _REQUIRED means the flag must
# be present. Types matter for replay: configs re-enter through JSON.
_SCHEMAS: dict[str, dict] = {
    "solve": {
        "set": (str, _REQUIRED),
        "target": (str, _REQUIRED),
        "mode": (str, "find"),
        "cap": (int, None),
    },
    "extremal": {"op": (str, _REQUIRED), "N": (int, _REQUIRED), "cap": (int, None)},
    "constants": {"tol": (float, 1e-8)},
    "growth": {"n_max": (int, 36), "allow_large": (bool, False), "figure": (str, None)},
    "fourier": {
        "op": (str, _REQUIRED),
        "support": (str, None),
        "p": (str, "0.5"),
        "x": (str, None),
        "M": (int, None),
        "set": (str, None),
        "h": (int, 0),
        "K": (int, 1),
        "t": (int, 1),
        "grid": (int, 10**6),
        "c": (str, "1"),
        "threshold": (float, 1.0),
        "trials": (int, 10**4),
        "N": (int, 32),
        "S": (int, 32),
    },
    "sieve": {
        "op": (str, _REQUIRED),
        "N": (int, 10**6),
        "threshold": (float, 5.0),
        "t": (float, 2.0),
        "start": (int, 1),
        "length": (int, 30),
        "primes": (str, "2,3,5"),
    },
    "expand": {
        "op": (str, _REQUIRED),
        "a": (int, 1),
        "b": (int, 2),
        "S": (int, None),
        "cap": (int, None),
        "t": (int, 2),
        "N": (int, 6),
        "allow_heuristic": (bool, False),
    },
    "bench": {
        "b_max": (int, 10**4),
        "samples": (int, 100),
        "strategies": (str, "greedy,smooth"),
        "figure": (str, None),
    },
}

_HANDLERS = {
    "solve": _h_solve,
    "extremal": _h_extremal,
    "constants": _h_constants,
    "growth": _h_growth,
    "fourier": _h_fourier,
    "sieve": _h_sieve,
    "expand": _h_expand,
    "bench": _h_bench,
}


def _normalize(subcommand: str, raw_params: dict, seed: int, fmt: str, output: str | None) -> dict:
    schema = _SCHEMAS.get(subcommand)
    if schema is None:
        raise ValidationError(f"unknown subcommand {subcommand!r}")
    unknown = set(raw_params) - set(schema)
    if unknown:
        raise ValidationError(f"unknown keys for {subcommand}: {sorted(unknown)}")
    params = {}
    for key, (typ, default) in schema.items():
        if key in raw_params and raw_params[key] is not None:
            value = raw_params[key]
            params[key] = typ(value) if not isinstance(value, bool) else value
        elif default is _REQUIRED:
            raise ValidationError(f"{subcommand} requires --{key.replace('_', '-')}")
        else:
            params[key] = default
    if fmt not in ("json", "csv", "table"):
        raise ValidationError(f"format must be json, csv, or table, got {fmt!r}")
    return {
        "subcommand": subcommand,
        "params": params,
        "seed": int(seed),
        "format": fmt,
        "output": output,
    }


def _flat_items(payload: object, prefix: str = "") -> list[tuple[str, object]]:
    items: list[tuple[str, object]] = []
    if isinstance(payload, dict):
        for key in sorted(payload):
            items.extend(_flat_items(payload[key], f"{prefix}{key}." if prefix else f"{key}."))
    elif isinstance(payload, (list, tuple)):
        items.append((prefix.rstrip("."), json.dumps(payload, default=str)))
    else:
        items.append((prefix.rstrip("."), payload))
    return items


def _render(result: _Result, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(result.payload, indent=2, sort_keys=True, default=str) + "\n"
    if fmt == "csv":
        if result.csv_text is not None:
            return result.csv_text
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        if result.rows is not None and result.columns is not None:
            writer.writerow(result.columns)
            for row in result.rows:
                writer.writerow([row[c] for c in result.columns])
        else:
            writer.writerow(["key", "value"])
            for key, value in _flat_items(result.payload):
                writer.writerow([key, value])
        return buffer.getvalue()
    # table
    if result.rows is not None and result.columns is not None:
        widths = {
            c: max(len(c), *(len(str(row[c])) for row in result.rows)) for c in result.columns
        } if result.rows else {c: len(c) for c in result.columns}
        lines = ["  ".join(c.ljust(widths[c]) for c in result.columns)]
        for row in result.rows:
            lines.append("  ".join(str(row[c]).ljust(widths[c]) for c in result.columns))
        return "\n".join(lines) + "\n"
    pairs = _flat_items(result.payload)
    width = max((len(k) for k, _ in pairs), default=0)
    return "\n".join(f"{k.ljust(width)}  {v}" for k, v in pairs) + "\n"


def _normalize_config(config: dict) -> dict:
    if not isinstance(config, dict) or "subcommand" not in config:
        raise ValidationError("config must be an object with a 'subcommand' key")
    subcommand = config["subcommand"]
    if subcommand not in _HANDLERS:
        raise ValidationError(f"unknown subcommand {subcommand!r}")
    extra = set(config) - {"subcommand", "params", "seed", "format", "output"}
    if extra:
        raise ValidationError(f"unknown config keys: {sorted(extra)}")
    return _normalize(
        subcommand,
        config.get("params", {}) or {},
        config.get("seed", 0),
        config.get("format", "json"),
        config.get("output"),
    )


def dispatch(config: dict) -> str:
    """Run a config (normalizing it first) and return the stdout artifact."""
    normalized = _normalize_config(config)
    handler = _HANDLERS[normalized["subcommand"]]
    result = handler(normalized["params"], normalized["seed"])
    return _render(result, normalized["format"])


def _add_common(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--format", choices=["json", "csv", "table"], default="json")
    sub.add_argument("--seed", type=int, default=0)
    sub.add_argument("--output", default=None, help="also write the artifact to this path")


def build_parser() -> _Parser:
    parser = _Parser(prog="unitfrac", description=__doc__.splitlines()[0])
    subs = parser.add_subparsers(dest="subcommand", required=True)

    p = subs.add_parser("solve", parents=[], help="subset solver over a unit set")
    p.add_argument("--set", required=True, help="e.g. 1..6 or 2,3,7..9")
    p.add_argument("--target", required=True, help="rational like 1 or 5/6")
    p.add_argument("--mode", choices=["find", "count", "count-at-most", "exists", "enumerate"],
                   default="find")
    p.add_argument("--cap", type=int, default=None)
    _add_common(p)

    p = subs.add_parser("extremal", help="avoiding-set optima and the blocked start")
    p.add_argument("--op", choices=["lambda", "largest", "blocked-start"], required=True)
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--cap", type=int, default=None)
    _add_common(p)

    p = subs.add_parser("constants", help="entropy constants")
    p.add_argument("--tol", type=float, default=1e-8)
    _add_common(p)

    p = subs.add_parser("growth", help="exact counts vs the entropy bound")
    p.add_argument("--n-max", type=int, default=36)
    p.add_argument("--allow-large", action="store_true")
    p.add_argument("--figure", default=None, help="write a PNG to this path")
    _add_common(p)

    p = subs.add_parser("fourier", help="integrality probability and sweeps")
    p.add_argument("--op", required=True,
                   choices=["probability", "major-arc", "residues", "taylor", "azuma",
                            "plan", "monte-carlo"])
    p.add_argument("--support", default=None)
    p.add_argument("--p", default=None, help="sampling probability (one value or per-element list)")
    p.add_argument("--x", default=None, help="offset as integer x or rational x/Q")
    p.add_argument("--M", type=int, default=None)
    p.add_argument("--set", default=None)
    p.add_argument("--h", type=int, default=None)
    p.add_argument("--K", type=int, default=None)
    p.add_argument("--t", type=int, default=None)
    p.add_argument("--grid", type=int, default=None)
    p.add_argument("--c", default=None, help="comma list of increment bounds")
    p.add_argument("--threshold", type=float, default=None)
    p.add_argument("--trials", type=int, default=None)
    p.add_argument("--N", type=int, default=None)
    p.add_argument("--S", type=int, default=None)
    _add_common(p)

    p = subs.add_parser("sieve", help="interval sieves and prime statistics")
    p.add_argument("--op", required=True,
                   choices=["mertens", "omega-tail", "large-pp", "survivors", "lemma-matrix"])
    p.add_argument("--N", type=int, default=None)
    p.add_argument("--threshold", type=float, default=None)
    p.add_argument("--t", type=float, default=None)
    p.add_argument("--start", type=int, default=None)
    p.add_argument("--length", type=int, default=None)
    p.add_argument("--primes", default=None)
    _add_common(p)

    p = subs.add_parser("expand", help="egyptian fraction expansions")
    p.add_argument("--op", choices=["greedy", "smooth", "from", "certificate"], required=True)
    p.add_argument("--a", type=int, default=None)
    p.add_argument("--b", type=int, default=None)
    p.add_argument("--S", type=int, default=None)
    p.add_argument("--cap", type=int, default=None)
    p.add_argument("--t", type=int, default=None)
    p.add_argument("--N", type=int, default=None)
    p.add_argument("--allow-heuristic", action="store_true")
    _add_common(p)

    p = subs.add_parser("bench", help="expansion budget benchmark")
    p.add_argument("--b-max", type=int, default=None)
    p.add_argument("--samples", type=int, default=None)
    p.add_argument("--strategies", default=None)
    p.add_argument("--figure", default=None)
    _add_common(p)

    p = subs.add_parser("replay", help="re-run a REPLAY config line")
    p.add_argument("config", nargs="?", default=None,
                   help="config JSON (reads stdin when omitted)")
    return parser


def _args_to_config(args: argparse.Namespace) -> dict:
    raw = dict(vars(args))
    subcommand = raw.pop("subcommand")
    fmt = raw.pop("format")
    seed = raw.pop("seed")
    output = raw.pop("output")
    raw = {k: v for k, v in raw.items() if v is not None and v is not False}
    # store_true flags come back as plain bools; keep True values
    return _normalize(subcommand, raw, seed, fmt, output)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.subcommand == "replay":
            text = args.config if args.config is not None else sys.stdin.readline()
            text = text.strip()
            if text.startswith("REPLAY "):
                text = text[len("REPLAY "):]
            if not text:
                raise ValidationError("replay needs a config line")
            try:
                config = json.loads(text)
            except json.JSONDecodeError as exc:
                raise ValidationError(f"bad replay config: {exc}") from exc
        else:
            config = _args_to_config(args)
        config = _normalize_config(config)
        started = time.perf_counter()
        artifact = dispatch(config)
        elapsed_ms = 1000.0 * (time.perf_counter() - started)
        replay_line = "REPLAY " + json.dumps(config, sort_keys=True, separators=(",", ":"))
        print(replay_line, file=sys.stderr)
        print(f"elapsed_ms={elapsed_ms:.1f}", file=sys.stderr)
        sys.stdout.write(artifact)
        if config.get("output"):
            with open(config["output"], "w") as handle:
                handle.write(artifact)
        return 0
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except CapacityError as exc:
        print(f"capacity: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
