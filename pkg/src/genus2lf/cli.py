"""Command-line front end.

Exit codes
----------
0   success (verify: Identity; certify: Proved)
1   verify: verdict is not Identity
2   input error: unreadable file, schema violation, inadmissible type
3   certify: Unknown
4   derive: seed fails verification, stamp check or type
5   derive: lantern config fails its checks or stamp
6   derive or moves: a move precondition failed
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Optional

import jsonschema
from referencing import Registry, Resource

from . import __version__
from .analysis import (
    InadmissibleType,
    certify_indecomposable,
    certify_minimal,
    enumerate_admissible,
    invariants,
    theorem1_report,
)
from .factorization import (
    ENGINE_VERSION,
    FactorizationError,
    LanternConfig,
    PositiveFactorization,
    cyclic_permute,
    derive_14_13,
    global_conjugate,
    hurwitz_move,
    lantern_substitute,
    stamp,
    stamp_matches,
    type_of,
    verify,
)
from .mcg import MappingClassWord, Verdict

THREADS_ENV = "GENUS2LF_THREADS"

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_UNKNOWN, EXIT_SEED, EXIT_LANTERN, EXIT_MOVE = range(7)


class InputError(Exception):
    pass


# --- schemas ------------------------------------------------------------------


@lru_cache(maxsize=None)
def _registry() -> Registry:
    root = resources.files(__package__).joinpath("schemas")
    pairs = []
    for name in ("curve", "factorization", "lantern", "moves"):
        body = json.loads(root.joinpath(f"{name}.schema.json").read_text())
        pairs.append((body["$id"], Resource.from_contents(body)))
    return Registry().with_resources(pairs)


def validate(data, kind: str) -> None:
    schema = _registry().contents(f"{kind}.schema.json")
    try:
        jsonschema.Draft202012Validator(schema, registry=_registry()).validate(data)
    except jsonschema.ValidationError as e:
        raise InputError(f"{kind} schema: {e.message}") from None


def read_json(path: str):
    try:
        raw = Path(path).read_bytes()
        return json.loads(raw), raw
    except (OSError, ValueError) as e:
        raise InputError(f"{path}: {e}") from None


def digest_bytes(raw: bytes) -> str:
    return "sha256:" + hashlib.sha256(raw).hexdigest()


# --- manifest -----------------------------------------------------------------


@dataclass
class RunManifest:
    command: str
    inputs: dict = field(default_factory=dict)
    engine: str = ENGINE_VERSION
    version: str = __version__
    verdicts: dict = field(default_factory=dict)
    seconds: float = 0.0

    def add_input(self, path: str, raw: bytes) -> None:
        self.inputs[str(path)] = digest_bytes(raw)

    def to_json(self) -> dict:
        return asdict(self)


def threads() -> int:
    try:
        return max(1, int(os.environ.get(THREADS_ENV, "1")))
    except ValueError:
        return 1


def _render(obj, depth: int = 0) -> str:
    """Indented JSON, with flat lists of scalars kept on one line."""
    pad, inner = " " * depth, " " * (depth + 1)
    if isinstance(obj, dict) and obj:
        body = ",\n".join(f"{inner}{json.dumps(k)}: {_render(v, depth + 1)}" for k, v in obj.items())
        return "{\n" + body + "\n" + pad + "}"
    if isinstance(obj, list) and obj and any(isinstance(x, (dict, list)) for x in obj):
        body = ",\n".join(inner + _render(v, depth + 1) for v in obj)
        return "[\n" + body + "\n" + pad + "]"
    return json.dumps(obj)


def emit(obj) -> None:
    print(_render(obj))


def load_factorization_file(path: str, manifest: RunManifest) -> PositiveFactorization:
    data, raw = read_json(path)
    validate(data, "factorization")
    manifest.add_input(path, raw)
    try:
        return PositiveFactorization.from_json(data)
    except ValueError as e:
        raise InputError(f"{path}: {e}") from None


def write_verified(pf: PositiveFactorization, out: str, manifest: RunManifest) -> dict:
    cert = verify(pf)
    if cert.verdict is not Verdict.IDENTITY:
        raise FactorizationError("unverified", f"refusing to write: verdict {cert.verdict.value}")
    manifest.verdicts[out] = cert.verdict.value
    payload = {**pf.to_json(), "type": list(type_of(pf)), "manifest": manifest.to_json()}
    data = stamp(payload)
    Path(out).write_text(json.dumps(data, indent=1) + "\n")
    return data


# --- commands -----------------------------------------------------------------


def _verify_one(path: str) -> tuple[str, dict, int]:
    m = RunManifest("verify")
    try:
        pf = load_factorization_file(path, m)
    except InputError as e:
        return path, {"error": str(e)}, EXIT_INPUT
    cert = verify(pf)
    body = {
        "file": path,
        "digest": m.inputs[path],
        "type": list(type_of(pf)),
        "letters": len(pf),
        "certificate": cert.to_json(),
    }
    return path, body, EXIT_OK if cert.verdict is Verdict.IDENTITY else EXIT_FAIL


def cmd_verify(args) -> int:
    t0 = time.perf_counter()
    paths = args.paths
    if threads() > 1 and len(paths) > 1:
        with ProcessPoolExecutor(threads()) as ex:
            results = list(ex.map(_verify_one, paths))
    else:
        results = [_verify_one(p) for p in paths]
    codes = {r[2] for r in results}
    code = EXIT_INPUT if EXIT_INPUT in codes else EXIT_FAIL if EXIT_FAIL in codes else EXIT_OK
    manifest = RunManifest("verify", seconds=time.perf_counter() - t0)
    for p, body, c in results:
        if "digest" in body:
            manifest.inputs[p] = body["digest"]
            manifest.verdicts[p] = body["certificate"]["verdict"]
    out = [r[1] for r in results]
    emit({"results": out if len(out) > 1 else out[0], "manifest": manifest.to_json()})
    return code


def _load_stamped(path: str, kind: str, manifest: RunManifest) -> dict:
    data, raw = read_json(path)
    validate(data, kind)
    manifest.add_input(path, raw)
    return data


def cmd_derive(args) -> int:
    from .data import LANTERN_FILE, SEED_FILE, data_path

    t0 = time.perf_counter()
    m = RunManifest("derive")
    seed_path = args.seed or str(data_path(SEED_FILE))
    lantern_path = args.lantern or str(data_path(LANTERN_FILE))
    try:
        seed_data = _load_stamped(seed_path, "factorization", m)
        lantern_data = _load_stamped(lantern_path, "lantern", m)
    except InputError as e:
        emit({"error": str(e), "manifest": m.to_json()})
        return EXIT_INPUT
    if not stamp_matches(seed_data):
        emit({"error": f"{seed_path}: verified_by stamp missing or stale"})
        return EXIT_SEED
    if not stamp_matches(lantern_data):
        emit({"error": f"{lantern_path}: verified_by stamp missing or stale"})
        return EXIT_LANTERN
    seed = PositiveFactorization.from_json(seed_data)
    cfg = LanternConfig.from_json(lantern_data)
    check = cfg.check()
    m.verdicts["lantern"] = check.to_json()
    if not check.ok:
        emit({"error": "lantern config fails its checks", "checks": check.to_json()})
        return EXIT_LANTERN
    seed_cert = verify(seed)
    m.verdicts["seed"] = seed_cert.verdict.value
    if seed_cert.verdict is not Verdict.IDENTITY:
        emit({"error": "seed does not verify", "certificate": seed_cert.to_json()})
        return EXIT_SEED
    try:
        out = derive_14_13(seed, None, cfg)
    except FactorizationError as e:
        emit({"error": str(e), "code": e.code, "manifest": m.to_json()})
        return EXIT_SEED if e.code in ("length", "type") else EXIT_MOVE
    m.seconds = time.perf_counter() - t0
    n, s = type_of(out)
    inv = invariants(n, s)
    m.verdicts["invariants"] = inv.to_json()
    data = write_verified(out, args.out, m)
    emit({"out": args.out, "letters": len(out), "type": [n, s],
          "signature": inv.signature, "euler": inv.euler,
          "verified_by": data["verified_by"], "manifest": m.to_json()})
    return EXIT_OK


def cmd_certify(args) -> int:
    n, s = args.n, args.s
    try:
        if args.kind == "minimal":
            cert = certify_minimal(n, s)
        elif args.kind == "indecomposable":
            cert = certify_indecomposable(n, s)
        else:
            cert = theorem1_report((n, s))
    except InadmissibleType as e:
        emit({"error": str(e), "admissibility": e.report.to_json()})
        return EXIT_INPUT
    except ValueError as e:
        emit({"error": str(e)})
        return EXIT_INPUT
    emit(cert.to_json())
    return EXIT_OK if cert.proved else EXIT_UNKNOWN


def geography_rows(max_k: int) -> list[dict]:
    rows = []
    for n, s in enumerate_admissible(max_k):
        inv = invariants(n, s)
        rows.append({
            "n": n, "s": s, "k": inv.k, "signature": inv.signature, "euler": inv.euler,
            "minimal": certify_minimal(n, s).verdict.value,
            "indecomposable": certify_indecomposable(n, s).verdict.value,
            "s_eq_2n_minus_5": s == 2 * n - 5,
        })
    return rows


def render_table(rows: list[dict]) -> str:
    cols = ["k", "n", "s", "signature", "euler", "minimal", "indecomposable", "s_eq_2n_minus_5"]
    head = ["k", "n", "s", "sigma", "e", "minimal", "indecomposable", "s=2n-5"]
    cells = [head] + [[("yes" if r[c] is True else "" if r[c] is False else str(r[c])) for c in cols] for r in rows]
    widths = [max(len(row[i]) for row in cells) for i in range(len(cols))]
    lines = ["  ".join(x.rjust(w) for x, w in zip(row, widths)).rstrip() for row in cells]
    return "\n".join(lines)


def cmd_geography(args) -> int:
    if args.max_k < 1:
        emit({"error": "max-k must be at least 1"})
        return EXIT_INPUT
    rows = geography_rows(args.max_k)
    if args.format == "json":
        emit({"max_k": args.max_k, "rows": rows})
    else:
        print(render_table(rows))
    return EXIT_OK


def apply_moves(pf: PositiveFactorization, script: list, cfg: Optional[LanternConfig] = None) -> PositiveFactorization:
    for mv in script:
        op = mv["op"]
        if op == "cyclic":
            pf = cyclic_permute(pf, mv["k"])
        elif op == "hurwitz":
            pf = hurwitz_move(pf, mv["i"], mv.get("direction", 1))
        elif op == "conjugate":
            pf = global_conjugate(pf, MappingClassWord.from_json(mv["word"]))
        elif op == "lantern":
            if cfg is None:
                from .data import load_lantern

                cfg = load_lantern()
            pf = lantern_substitute(pf, mv["position"], cfg)
        else:  # pragma: no cover - schema rejects it
            raise InputError(f"unknown move {op!r}")
    return pf


def cmd_moves(args) -> int:
    t0 = time.perf_counter()
    m = RunManifest("moves")
    try:
        pf = load_factorization_file(args.path, m)
        script, raw = read_json(args.script)
        validate(script, "moves")
        m.add_input(args.script, raw)
        cfg = None
        if args.lantern:
            cfg = LanternConfig.from_json(_load_stamped(args.lantern, "lantern", m))
    except InputError as e:
        emit({"error": str(e)})
        return EXIT_INPUT
    if verify(pf).verdict is not Verdict.IDENTITY:
        emit({"error": f"{args.path} does not verify"})
        return EXIT_FAIL
    try:
        pf = apply_moves(pf, script, cfg)
    except FactorizationError as e:
        emit({"error": str(e), "code": e.code})
        return EXIT_MOVE
    m.seconds = time.perf_counter() - t0
    if args.out:
        try:
            write_verified(pf, args.out, m)
        except FactorizationError as e:
            emit({"error": str(e)})
            return EXIT_FAIL
    emit({"type": list(type_of(pf)), "letters": len(pf), "out": args.out,
          "factorization": pf.to_json(), "manifest": m.to_json()})
    return EXIT_OK


# --- entry point --------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="genus2lf", description=__doc__.split("\n")[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="verify factorization files")
    v.add_argument("paths", nargs="+")
    v.set_defaults(func=cmd_verify)

    d = sub.add_parser("derive", help="build a type-(14,13) factorization from a (4,3) seed")
    d.add_argument("--seed", help="seed factorization (default: bundled)")
    d.add_argument("--lantern", help="lantern config (default: bundled)")
    d.add_argument("--out", required=True)
    d.set_defaults(func=cmd_derive)

    c = sub.add_parser("certify", help="minimality / indecomposability / case-tree certificates")
    c.add_argument("n", type=int)
    c.add_argument("s", type=int)
    c.add_argument("--kind", choices=("minimal", "indecomposable", "theorem1"), default="minimal")
    c.set_defaults(func=cmd_certify)

    g = sub.add_parser("geography", help="list admissible types")
    g.add_argument("--max-k", type=int, default=4)
    g.add_argument("--format", choices=("table", "json"), default="table")
    g.set_defaults(func=cmd_geography)

    mv = sub.add_parser("moves", help="apply a scripted move list to a factorization")
    mv.add_argument("path")
    mv.add_argument("--script", required=True)
    mv.add_argument("--lantern")
    mv.add_argument("--out")
    mv.set_defaults(func=cmd_moves)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
