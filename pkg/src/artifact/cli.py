"""Command-line front end (``holotor``).

Subcommands:

    holotor compute --input link.json [--invariant torsion|T|F|K|all]
    holotor burau   --input link.json [--variant boundary|reduced|nice]
    holotor verify  SUITE [--trials N] [--seed S]

Input files hold one link spec or a JSON array of them.  Exit codes: 0 on
success, 1 for malformed input or usage, 2 when a mathematical
precondition fails (singular meridian, inadmissible colors, ...).
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from importlib.metadata import PackageNotFoundError, version
from typing import Any, Sequence

import numpy as np

from .braids import BraidWord
from .burau import burau_boundary, burau_nice, burau_reduced
from .errors import PreconditionError
from .holonomy import ExtChar, StarChar, default_mu, defactorize_tuple, factorize_tuple
from .invariants import LinkSpec, compute_report, worker_count
from .numerics import DEFAULT_TOL, det, identity
from .suites import SUITES, run_suite

TOOL = "holotor"

EXIT_OK, EXIT_INPUT, EXIT_PRECONDITION = 0, 1, 2


def tool_version() -> str:
    try:
        return version("artifact")
    except PackageNotFoundError:
        return "0+unknown"


# JSON encoding -----------------------------------------------------------------


def encode(value: Any) -> Any:
    """Make numbers, arrays and dataclass dumps JSON-safe; complex -> [re, im]."""
    if isinstance(value, (complex, np.complexfloating)):
        return [float(value.real) + 0.0, float(value.imag) + 0.0]
    if isinstance(value, (np.floating, float)):
        return float(value) + 0.0
    if isinstance(value, (np.integer,)):
        return int(value)
    if isinstance(value, np.ndarray):
        return [encode(v) for v in value.tolist()] if value.ndim else encode(value.item())
    if isinstance(value, dict):
        return {str(k): encode(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [encode(v) for v in value]
    return value


def decode_complex(value: Any) -> complex:
    if isinstance(value, (int, float)):
        return complex(value)
    if isinstance(value, (list, tuple)) and len(value) == 2:
        return complex(float(value[0]), float(value[1]))
    raise ValueError(f"cannot read {value!r} as a complex number")


def decode_matrix(rows: Any) -> np.ndarray:
    return np.array([[decode_complex(v) for v in row] for row in rows], dtype=complex)


def encode_star(a: StarChar) -> dict:
    return {"kappa": encode(a.kappa), "epsilon": encode(a.epsilon), "phi": encode(a.phi)}


def decode_color(obj: Any) -> np.ndarray | StarChar:
    if not isinstance(obj, dict):
        raise ValueError("each color must be an object with key 'm' or keys kappa/epsilon/phi")
    if "m" in obj:
        return decode_matrix(obj["m"])
    if "kappa" in obj:
        return StarChar(
            decode_complex(obj["kappa"]),
            decode_complex(obj.get("epsilon", 0)),
            decode_complex(obj.get("phi", 0)),
        )
    raise ValueError("unrecognized color encoding")


def linkspec_from_json(obj: Any, defaults: dict | None = None) -> LinkSpec:
    """Parse one link spec; ``defaults`` supplies options the file leaves out."""
    if not isinstance(obj, dict):
        raise ValueError("a link spec must be a JSON object")
    options = dict(defaults or {})
    options.update(obj.get("options", {}))
    word_field = obj.get("word", [])
    letters = BraidWord.parse(word_field).letters if isinstance(word_field, str) else tuple(word_field)
    strands = int(obj.get("strands", max((abs(x) for x in letters), default=0) + 1))
    word = BraidWord(strands, letters)
    raw = [decode_color(c) for c in obj.get("colors", [])]
    if raw and all(isinstance(c, StarChar) for c in raw):
        colors = defactorize_tuple(raw)
    elif any(isinstance(c, StarChar) for c in raw):
        raise ValueError("colors mix matrix and SL2* encodings")
    else:
        colors = raw
    mu = obj.get("mu")
    return LinkSpec(
        word,
        colors,
        None if mu is None else [decode_complex(m) for m in mu],
        float(options.get("tol", DEFAULT_TOL)),
        int(options.get("seed", 0)),
        options.get("gauge", "auto"),
        options.get("stabilize", "auto"),
    )


def linkspec_to_json(spec: LinkSpec) -> dict:
    out = {
        "strands": spec.word.strands,
        "word": list(spec.word.letters),
        "colors": [{"m": encode(g)} for g in spec.colors],
        "options": {
            "tol": spec.tol,
            "seed": spec.seed,
            "gauge": spec.gauge,
            "stabilize": spec.stabilize,
        },
    }
    if spec.mu is not None:
        out["mu"] = encode(spec.mu)
    return out


# commands ----------------------------------------------------------------------


def _header(args: argparse.Namespace) -> dict:
    return {"tool": TOOL, "version": tool_version(), "seed": args.seed, "tol": args.tol}


def _load(path: str) -> tuple[list[Any], bool]:
    text = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
    data = json.loads(text)
    return (data, True) if isinstance(data, list) else ([data], False)


def _guard(fn, item) -> tuple[dict, int]:
    try:
        return fn(item), EXIT_OK
    except PreconditionError as exc:
        return {"error": str(exc), "kind": "precondition"}, EXIT_PRECONDITION
    except (ValueError, KeyError, TypeError) as exc:
        return {"error": str(exc), "kind": "input"}, EXIT_INPUT


def _batch(items: list[Any], fn) -> tuple[list[dict], int]:
    with ThreadPoolExecutor(max_workers=worker_count()) as pool:
        results = list(pool.map(lambda item: _guard(fn, item), items))
    return [r for r, _ in results], max((code for _, code in results), default=EXIT_OK)


def _defaults(args: argparse.Namespace) -> dict:
    return {"tol": args.tol, "seed": args.seed, "gauge": args.gauge, "stabilize": args.stabilize}


def cmd_compute(args: argparse.Namespace) -> tuple[Any, int]:
    items, batch = _load(args.input)

    def one(obj: Any) -> dict:
        spec = linkspec_from_json(obj, _defaults(args))
        report = compute_report(spec, args.invariant).to_dict()
        out = {k: v for k, v in report.items() if v is not None}
        return {**_header(args), "invariant": args.invariant, **encode(out)}

    results, code = _batch(items, one)
    return (results if batch else results[0]), code


def cmd_burau(args: argparse.Namespace) -> tuple[Any, int]:
    items, batch = _load(args.input)

    def one(obj: Any) -> dict:
        spec = linkspec_from_json(obj, _defaults(args))
        if spec.word.strands < 2:
            matrix = identity(0)
        elif args.variant == "boundary":
            matrix = burau_boundary(spec.word, spec.colors).matrix
        elif args.variant == "reduced":
            matrix = burau_reduced(spec.word, spec.colors).matrix
        else:
            chars = factorize_tuple(spec.colors, spec.tol)
            matrix = burau_nice(spec.word, [ExtChar(a, default_mu(a)) for a in chars]).matrix
        return {
            **_header(args),
            "variant": args.variant,
            "matrix": encode(matrix),
            "det": encode(det(identity(matrix.shape[0]) - matrix)),
        }

    results, code = _batch(items, one)
    return (results if batch else results[0]), code


def cmd_verify(args: argparse.Namespace) -> tuple[Any, int]:
    if args.suite not in SUITES:
        return {**_header(args), "error": f"unknown suite {args.suite!r}", "suites": sorted(SUITES)}, EXIT_INPUT
    result = run_suite(args.suite, args.trials, args.seed)
    return {**_header(args), **result.to_dict()}, EXIT_OK if result.passed else EXIT_PRECONDITION


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=DEFAULT_TOL)
    common.add_argument("--seed", type=int, default=0)
    fmt = common.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="pretty", action="store_false", help="compact JSON (default)")
    fmt.add_argument("--pretty", dest="pretty", action="store_true", help="indented JSON")
    common.set_defaults(pretty=False)

    link = argparse.ArgumentParser(add_help=False)
    link.add_argument("--input", required=True, help="link spec JSON file, or - for stdin")
    link.add_argument("--gauge", choices=["auto", "off"], default="auto")
    link.add_argument("--stabilize", choices=["auto", "off"], default="auto")

    parser = argparse.ArgumentParser(prog=TOOL, description="Torsion and quantum holonomy invariants of colored braid closures.")
    parser.add_argument("--version", action="version", version=f"{TOOL} {tool_version()}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", parents=[common, link], help="evaluate link invariants")
    p.add_argument("--invariant", choices=["torsion", "T", "F", "K", "all"], default="all")
    p.set_defaults(handler=cmd_compute)

    p = sub.add_parser("burau", parents=[common, link], help="emit twisted Burau matrices")
    p.add_argument("--variant", choices=["boundary", "reduced", "nice"], default="reduced")
    p.set_defaults(handler=cmd_burau)

    p = sub.add_parser("verify", parents=[common], help="run a randomized verification suite")
    p.add_argument("suite", help="one of: " + ", ".join(SUITES))
    p.add_argument("--trials", type=int, default=20)
    p.set_defaults(handler=cmd_verify)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code not in (0, None) else EXIT_OK
    try:
        payload, code = args.handler(args)
    except (OSError, json.JSONDecodeError, ValueError) as exc:
        payload, code = {"error": str(exc), "kind": "input"}, EXIT_INPUT
    except PreconditionError as exc:
        payload, code = {"error": str(exc), "kind": "precondition"}, EXIT_PRECONDITION
    indent = 2 if getattr(args, "pretty", False) else None
    print(json.dumps(encode(payload), indent=indent, sort_keys=True))
    return code


if __name__ == "__main__":
    sys.exit(main())
