"""Command-line surface.

    tkk check     --base <name|path> [--kind K]
    tkk build     <sl|plus|matrix|tkk|uce> --base B [--n N] [--out PATH]
    tkk h2        --base B [--n N]
    tkk hc1       --base B
    tkk verify    <thm32|thm41> --base B
    tkk steinberg --base B [--n N]
    tkk growth    --dmax D

Shared flags: --format text|machine, --out PATH, --fast, --max-dim N, -v.
Machine output is a single JSON object with a schema version field and
sorted keys; repeated runs on the same inputs are byte-identical.  Exit
status is 0 exactly when every verification in the run passed.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from dataclasses import dataclass

from .errors import (ConsistencyError, GuardExceededError, SpecFileError,
                     ValidationError)
from .algebra import (KIND_IDENTITIES, check_identity, matrix_algebra,
                      plus_algebra)
from .jordan import TripleSystem, check_jts, triple_from_associative, universal_tkk
from .homology import hc1_dim
from .specio import (BUILTIN_BASES, algebra_to_spec, dump_json, load_base,
                     parse_spec)
from .uce import (build_uce, growth_report, special_linear_guarded,
                  steinberg_check, verify_sl2_iso, verify_sl4_iso)

SCHEMA = "tkk-report/1"

log = logging.getLogger("tkk")


@dataclass
class CommandConfig:
    command: str
    base: str | None = None
    n: int | None = None
    out: str | None = None
    fmt: str = "text"
    fast: bool = False
    max_dim: int = 80
    what: str | None = None
    kind: str | None = None
    dmax: int = 3

    def __post_init__(self):
        if self.max_dim <= 0:
            raise ValueError("resource cap must be positive")
        if self.dmax <= 0:
            raise ValueError("dmax must be positive")


def _emit(cfg: CommandConfig, payload: dict, text: str) -> None:
    if cfg.fmt == "machine":
        payload = dict(payload)
        payload["schema"] = SCHEMA
        body = json.dumps(payload, sort_keys=True, separators=(",", ":")) + "\n"
    else:
        body = text if text.endswith("\n") else text + "\n"
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(body)
    else:
        sys.stdout.write(body)


def _base_name(cfg: CommandConfig) -> str:
    return cfg.base if cfg.base in BUILTIN_BASES else "file"


def cmd_check(cfg: CommandConfig) -> int:
    if cfg.base in BUILTIN_BASES:
        obj = load_base(cfg.base)
    else:
        obj = parse_spec(cfg.base)
    if isinstance(obj, TripleSystem):
        rep = check_jts(obj)
        payload = {"command": "check", "base": cfg.base, "target": "triple-system",
                   "holds": rep.holds, "report": rep.to_dict()}
        lines = [f"triple system: {'PASS' if rep.holds else 'FAIL'} "
                 f"(third axiom: {rep.third_axiom_mode})"]
        if not rep.holds:
            lines.append(f"witness: {rep.witness.description}")
        _emit(cfg, payload, "\n".join(lines))
        return 0 if rep.holds else 1
    kind = cfg.kind or obj.kind
    idents = KIND_IDENTITIES.get(kind)
    if idents is None:
        raise SpecFileError(f"unknown kind {kind!r}")
    reports = [check_identity(obj, ident) for ident in idents]
    holds = all(r.holds for r in reports)
    payload = {"command": "check", "base": cfg.base, "kind": kind, "holds": holds,
               "reports": [r.to_dict() for r in reports]}
    lines = [f"kind {kind}: {'PASS' if holds else 'FAIL'} (dim {obj.dim})"]
    for r in reports:
        lines.append(f"  {r.identity}: {'ok' if r.holds else 'FAIL'}")
        if not r.holds:
            lines.append(f"    witness: {r.witness.description}")
    _emit(cfg, payload, "\n".join(lines))
    return 0 if holds else 1


def cmd_build(cfg: CommandConfig) -> int:
    base = load_base(cfg.base) if cfg.what != "tkk" or cfg.base in BUILTIN_BASES \
        else None
    n = cfg.n or 2
    if cfg.what == "sl":
        out = algebra_to_spec(special_linear_guarded(base, n, cfg.max_dim),
                              f"sl{n}({cfg.base})")
        text = dump_json(out)
    elif cfg.what == "plus":
        out = algebra_to_spec(plus_algebra(base), f"plus({cfg.base})")
        text = dump_json(out)
    elif cfg.what == "matrix":
        out = algebra_to_spec(matrix_algebra(base, n), f"mat{n}({cfg.base})")
        text = dump_json(out)
    elif cfg.what == "tkk":
        if cfg.base not in BUILTIN_BASES:
            loaded = parse_spec(cfg.base)  # triple-system files welcome here
            triple = loaded if isinstance(loaded, TripleSystem) \
                else triple_from_associative(loaded)
        else:
            triple = triple_from_associative(base)
        lie = universal_tkk(triple)
        out = lie.export()
        out["name"] = f"tkk({cfg.base})"
        text = dump_json(out)
    elif cfg.what == "uce":
        g = special_linear_guarded(base, n, cfg.max_dim)
        ext = build_uce(g, cfg.max_dim, fast=cfg.fast)
        out = ext.export()
        out["name"] = f"uce(sl{n}({cfg.base}))"
        text = dump_json(out)
    else:
        raise SpecFileError(f"unknown build target {cfg.what!r}")
    out["command"] = "build"
    _emit(cfg, out, text)
    return 0


def cmd_h2(cfg: CommandConfig) -> int:
    base = load_base(cfg.base)
    n = cfg.n or 2
    ext = build_uce(special_linear_guarded(base, n, cfg.max_dim),
                    cfg.max_dim, fast=cfg.fast)
    payload = {"command": "h2", "base": cfg.base, "n": n,
               "dim_sl": ext.target.dim, "dim_uce": ext.total.dim,
               "h2_dim": ext.h2_dim}
    text = f"h2(sl{n}({cfg.base})) = {ext.h2_dim}"
    if n == 2:
        # reported side by side for comparison; no equality is asserted in
        # the rank-two case
        payload["hc1_dim"] = hc1_dim(base)
        text += f"   [hc1({cfg.base}) = {payload['hc1_dim']}]"
    _emit(cfg, payload, text)
    return 0


def cmd_hc1(cfg: CommandConfig) -> int:
    base = load_base(cfg.base)
    value = hc1_dim(base)
    payload = {"command": "hc1", "base": cfg.base, "hc1_dim": value}
    _emit(cfg, payload, f"hc1({cfg.base}) = {value}")
    return 0


def cmd_verify(cfg: CommandConfig) -> int:
    base = load_base(cfg.base)
    name = _base_name(cfg)
    if cfg.what == "thm32":
        rep = verify_sl2_iso(base, name, max_dim=cfg.max_dim)
    elif cfg.what == "thm41":
        rep = verify_sl4_iso(base, name, max_dim=cfg.max_dim)
    else:
        raise SpecFileError(f"unknown verification target {cfg.what!r}")
    payload = dict(rep.to_dict())
    payload["command"] = "verify"
    lines = [f"{cfg.what} on {cfg.base}: {'PASS' if rep.iso else 'FAIL'}",
             f"  dim uce = {rep.dim_uce}, dim tkk = {rep.dim_tkk}, "
             f"h2 = {rep.h2_dim}"]
    if rep.witness:
        lines.append(f"  witness: {rep.witness}")
    _emit(cfg, payload, "\n".join(lines))
    return 0 if rep.iso else 1


def cmd_steinberg(cfg: CommandConfig) -> int:
    base = load_base(cfg.base)
    n = cfg.n or 4
    ext = build_uce(special_linear_guarded(base, n, cfg.max_dim),
                    cfg.max_dim, fast=cfg.fast)
    rep = steinberg_check(ext)
    payload = dict(rep.to_dict())
    payload.update({"command": "steinberg", "base": cfg.base, "n": n})
    lines = [f"elementary relations on uce(sl{n}({cfg.base})): "
             f"{'PASS' if rep.holds else 'FAIL'}",
             f"  product family: {'ok' if rep.product_family.holds else 'FAIL'}",
             f"  commuting family: {'ok' if rep.commuting_family.holds else 'FAIL'}",
             f"  lifts generate: {rep.generates}"]
    _emit(cfg, payload, "\n".join(lines))
    return 0 if rep.holds else 1


def cmd_growth(cfg: CommandConfig) -> int:
    rows = growth_report(cfg.dmax, cfg.max_dim)
    payload = {"command": "growth", "rows": [r.to_dict() for r in rows]}
    lines = [f"{'d':>3} {'dim A':>7} {'dim sl2':>9} {'h2':>5}"]
    for r in rows:
        lines.append(f"{r.degree:>3} {r.dim_base:>7} {r.dim_sl2:>9} {r.h2_dim:>5}")
    _emit(cfg, payload, "\n".join(lines))
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="tkk",
        description="exact verification kernel for graded Lie algebras of "
                    "Jordan triple systems and matrix Lie algebra extensions")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, base_required=True):
        if base_required:
            p.add_argument("--base", required=True,
                           help=f"builtin ({', '.join(sorted(BUILTIN_BASES))}) "
                                f"or spec-file path")
        p.add_argument("--out", help="write the report here instead of stdout")
        p.add_argument("--format", dest="fmt", choices=("text", "machine"),
                       default="text")
        p.add_argument("--fast", action="store_true",
                       help="randomized pre-seeding; the sound full enumeration "
                            "always runs and results are unchanged")
        p.add_argument("--max-dim", dest="max_dim", type=int, default=80,
                       help="resource guard on Lie algebra dimension")
        p.add_argument("-v", "--verbose", action="count", default=0)

    p = sub.add_parser("check", help="run axiom checkers on a base or spec file")
    common(p)
    p.add_argument("--kind", choices=tuple(KIND_IDENTITIES),
                   help="override the kind to validate")

    p = sub.add_parser("build", help="construct and emit an object")
    p.add_argument("what", choices=("sl", "plus", "matrix", "tkk", "uce"))
    common(p)
    p.add_argument("--n", type=int, help="matrix size (default 2)")

    p = sub.add_parser("h2", help="second homology of sl_n over a base")
    common(p)
    p.add_argument("--n", type=int, default=2)

    p = sub.add_parser("hc1", help="first cyclic homology of a base")
    common(p)

    p = sub.add_parser("verify", help="run an isomorphism verification suite")
    p.add_argument("what", choices=("thm32", "thm41"))
    common(p)

    p = sub.add_parser("steinberg", help="elementary-matrix relation check")
    common(p)
    p.add_argument("--n", type=int, default=4)

    p = sub.add_parser("growth", help="truncation growth table")
    common(p, base_required=False)
    p.add_argument("--dmax", type=int, default=3)

    return ap


COMMANDS = {
    "check": cmd_check,
    "build": cmd_build,
    "h2": cmd_h2,
    "hc1": cmd_hc1,
    "verify": cmd_verify,
    "steinberg": cmd_steinberg,
    "growth": cmd_growth,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    level = logging.WARNING - 10 * min(args.verbose, 2)
    logging.basicConfig(level=level, stream=sys.stderr,
                        format="%(levelname)s %(message)s")
    cfg = CommandConfig(
        command=args.command,
        base=getattr(args, "base", None),
        n=getattr(args, "n", None),
        out=args.out,
        fmt=args.fmt,
        fast=args.fast,
        max_dim=args.max_dim,
        what=getattr(args, "what", None),
        kind=getattr(args, "kind", None),
        dmax=getattr(args, "dmax", 3),
    )
    start = time.time()
    try:
        status = COMMANDS[cfg.command](cfg)
    except (SpecFileError, ValidationError, GuardExceededError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        report = getattr(exc, "report", None)
        if report is not None and getattr(report, "witness", None) is not None:
            print(f"witness: {report.witness.description}", file=sys.stderr)
        return 2
    except ConsistencyError as exc:
        print(f"internal consistency failure: {exc}", file=sys.stderr)
        return 3
    log.info("%s finished in %.2fs", cfg.command, time.time() - start)
    return status


if __name__ == "__main__":
    sys.exit(main())
