"""Command line entry point ``wschreier``.

Exit codes: 0 success / true / exists, 1 false / absent, 2 bad input or a
domain error (the error class name is reported).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path

from . import formats
from .action import ActionClass, enumerate_action_classes, is_action, weak_semidirect_product
from .constructions import (
    coarse_action_compatible,
    coarse_quotient,
    glueing_quotient,
    matrix_monoid,
    right_invertible_submonoid,
    semilattice_glueing,
)
from .errors import NotAdmissible, NotAnAction, WSchreierError
from .extension import (
    canonical_quotient,
    count_schreier_retractions,
    is_schreier,
    is_weakly_schreier,
    iter_schreier_retractions,
    validate_split_extension,
)
from .quotient import enumerate_admissible_quotients, is_admissible
from .wact import WActObject, classify_extensions, functor_T, morphism_exists

FORMATS_HELP = """file formats ('#' starts a comment; paths are relative to the referencing file):
  .mon   order n, then n rows of n indices; identity is index 0
           2
           0 1
           1 1
  .hom   'dom.mon cod.mon' then the images
           S2.mon S2.mon
           0 1
  .ext   six lines naming the parts
           N n.mon
           G g.mon
           H h.mon
           k k.hom
           e e.hom
           s s.hom
  .quot  'N.mon H.mon' then |H| rows of |N| class labels
           S2.mon S2.mon
           0 1
           0 0
  .act   |H| rows of |N| entries: element ids (pre-action) or c:-prefixed labels (action class)
           c:0 c:1
           c:0 c:0

exit codes: 0 success/true, 1 false/absent, 2 input or domain error
"""


@dataclass
class RunReport:
    command: list
    inputs: dict
    result: dict
    wall_time: float = field(default=0.0)


def _quot_payload(Q) -> dict:
    return {"fibers": Q.fibers.tolist(), "classes": Q.num_classes}


def _obj_payload(obj: WActObject) -> dict:
    return {"quotient": obj.quotient.fibers.tolist(), "action": obj.action.class_valued.tolist()}


def _matrix_lines(leq) -> list[str]:
    return ["  " + " ".join("1" if x else "0" for x in row) for row in leq.tolist()]


def _write_pair(Q, action, prefix: Path, n_file: str, h_file: str) -> list[str]:
    formats.write_quotient(Q, prefix.with_suffix(".quot"), n_file, h_file)
    formats.write_action(action, prefix.with_suffix(".act"))
    return [str(prefix.with_suffix(".quot")), str(prefix.with_suffix(".act"))]


def _copy_monoids(N, H, directory: Path, stem: str) -> tuple[str, str]:
    n_file, h_file = f"{stem}.N.mon", f"{stem}.H.mon"
    formats.write_monoid(N, directory / n_file)
    formats.write_monoid(H, directory / h_file)
    return n_file, h_file


# --- subcommands -----------------------------------------------------------

def cmd_check_ext(args):
    parts = formats.read_extension_parts(args.file)
    try:
        ext = validate_split_extension(*parts)
    except WSchreierError as exc:
        name = type(exc).__name__
        payload = {"valid": False, "error": name, "witness": repr(getattr(exc, "witness", None))}
        return 2, payload, [f"split extension: INVALID ({name})", f"  {exc}"]
    ws = is_weakly_schreier(ext)
    payload = {"valid": True, "weakly_schreier": bool(ws)}
    lines = ["split extension: valid (kernel, cokernel, section)", f"weakly Schreier: {'yes' if ws else 'no'}"]
    if ws:
        cq = canonical_quotient(ext)
        payload.update(
            schreier=is_schreier(ext),
            retractions=count_schreier_retractions(ext),
            classes=cq.num_classes,
            quotient=cq.quotient.fibers.tolist(),
        )
        lines += [
            f"Schreier: {'yes' if payload['schreier'] else 'no'}",
            f"retractions: {payload['retractions']}",
            f"canonical quotient classes: {cq.num_classes}",
        ]
    else:
        lines.append(f"  no factorisation for g={ws.witness}")
    return (0 if ws else 1), payload, lines


def cmd_retractions(args):
    ext = formats.read_extension(args.file)
    count = count_schreier_retractions(ext)
    payload = {"count": count}
    lines = [f"retractions: {count}"]
    if args.list:
        if count > args.cap:
            from .errors import RetractionCapExceeded

            raise RetractionCapExceeded(count, args.cap)
        qs = [list(r.q) for r in iter_schreier_retractions(ext)]
        payload["retractions"] = qs
        lines += ["  " + " ".join(map(str, q)) for q in qs]
    return 0, payload, lines


def cmd_quotients(args):
    N, H = formats.read_monoid(args.N), formats.read_monoid(args.H)
    qs = enumerate_admissible_quotients(N, H, bound=args.bound)
    payload = {"count": len(qs), "quotients": [_quot_payload(Q) for Q in qs]}
    lines = [f"admissible quotients: {len(qs)}"]
    for i, Q in enumerate(qs):
        lines.append(f"  [{i}] classes={Q.num_classes} fibers={Q.fibers.tolist()}")
    if args.output:
        out = Path(args.output)
        out.mkdir(parents=True, exist_ok=True)
        n_file, h_file = _copy_monoids(N, H, out, "q")
        for i, Q in enumerate(qs):
            formats.write_quotient(Q, out / f"q{i:03d}.quot", n_file, h_file)
    return 0, payload, lines


def _load_admissible(path):
    Q = formats.read_quotient(path)
    verdict = is_admissible(Q.N, Q.H, Q.fibers)
    if not verdict:
        raise NotAdmissible(f"{path}: condition {verdict.condition} fails at {verdict.witness}")
    return Q


def cmd_actions(args):
    Q = _load_admissible(args.quot)
    acts = enumerate_action_classes(Q, bound=args.bound)
    payload = {"count": len(acts), "actions": [a.class_valued.tolist() for a in acts]}
    lines = [f"action classes: {len(acts)}"] + [f"  [{i}] {a.class_valued.tolist()}" for i, a in enumerate(acts)]
    if args.output:
        out = Path(args.output)
        out.mkdir(parents=True, exist_ok=True)
        for i, a in enumerate(acts):
            formats.write_action(a, out / f"a{i:03d}.act")
    return (0 if acts else 1), payload, lines


def cmd_build(args):
    Q = _load_admissible(args.quot)
    action = formats.read_action(args.act, Q)
    verdict = is_action(Q, action)
    if not verdict:
        raise NotAnAction(f"condition {verdict.condition} fails at {verdict.witness}")
    ext = weak_semidirect_product(Q, action)
    payload = {"order": ext.G.order, "table": ext.G.rows()}
    lines = [f"weak semidirect product of order {ext.G.order}"]
    if args.output:
        formats.write_extension(ext, args.output)
        lines.append(f"written to {args.output}")
    return 0, payload, lines


def cmd_classify(args):
    N, H = formats.read_monoid(args.N), formats.read_monoid(args.H)
    c = classify_extensions(N, H, quotient_bound=args.quotient_bound, action_bound=args.action_bound, threads=args.threads)
    payload = {"count": len(c), "objects": [_obj_payload(o) for o in c], "leq": c.leq.astype(int).tolist()}
    lines = [f"weakly Schreier extensions up to isomorphism: {len(c)}"]
    for i, o in enumerate(c):
        lines.append(f"  [{i}] quotient={o.quotient.fibers.tolist()} action={o.action.class_valued.tolist()}")
    lines.append("order matrix (row <= column):")
    lines += _matrix_lines(c.leq)
    code = 0
    if args.oracle:
        from .oracle import brute_force_classify, oracle_leq

        exts = brute_force_classify(N, H)
        images = [functor_T(x) for x in exts]
        index = [next((i for i, o in enumerate(c) if o == t), None) for t in images]
        bijective = None not in index and sorted(index) == list(range(len(c)))
        oleq = oracle_leq(exts)
        order_ok = bijective and all(
            bool(oleq[a, b]) == bool(c.leq[index[a], index[b]]) for a in range(len(exts)) for b in range(len(exts))
        )
        payload["oracle"] = {"count": len(exts), "bijection": bijective, "order_preserved": bool(order_ok)}
        lines.append(f"oracle: {len(exts)} extensions, bijection={bijective}, order preserved={bool(order_ok)}")
        code = 0 if order_ok else 1
    return code, payload, lines


def cmd_morphism(args):
    a, b = formats.read_extension(args.A), formats.read_extension(args.B)
    m = morphism_exists(a, b)
    if m is None:
        return 1, {"exists": False}, ["NONE"]
    payload = {"exists": True, "map": list(m.map.map), "injective": m.is_injective(), "bijective": m.is_bijective()}
    lines = [
        "morphism: " + " ".join(map(str, m.map.map)),
        f"injective: {'yes' if payload['injective'] else 'no'}, bijective: {'yes' if payload['bijective'] else 'no'}",
    ]
    return 0, payload, lines


def cmd_glueing(args):
    N, H = formats.read_monoid(args.N), formats.read_monoid(args.H)
    f = formats.read_hom(args.F, H, N)
    Q, act = glueing_quotient(N, f)
    semilattice = N.is_commutative() and N.is_idempotent()
    ext = semilattice_glueing(f) if semilattice and args.form == "pairs" else weak_semidirect_product(Q, act)
    payload = {"order": ext.G.order, "quotient": _quot_payload(Q), "table": ext.G.rows()}
    lines = [f"glueing extension of order {ext.G.order}", f"quotient classes: {Q.num_classes}"]
    if args.output:
        out = Path(args.output)
        formats.write_extension(ext, out)
        n_file, h_file = _copy_monoids(N, H, out.parent, out.stem)
        _write_pair(Q, act, out, n_file, h_file)
        lines.append(f"written to {out}")
    return 0, payload, lines


def cmd_coarse(args):
    N, H = formats.read_monoid(args.N), formats.read_monoid(args.H)
    Q = coarse_quotient(N, H)
    dec = right_invertible_submonoid(H)
    payload = {
        "quotient": _quot_payload(Q),
        "right_invertible": list(dec.L.members),
        "two_sided_complement": dec.complement_is_two_sided(),
    }
    lines = [f"coarse quotient classes: {Q.num_classes}", f"right invertible elements of H: {list(dec.L.members)}"]
    action = formats.read_action(args.action, Q) if args.action else ActionClass.trivial(Q)
    if args.action and not isinstance(action, ActionClass):
        payload["criterion"] = coarse_action_compatible(N, H, action)
    verdict = is_action(Q, action)
    payload["compatible"] = bool(verdict)
    lines.append(f"action compatible: {'yes' if verdict else 'no'}")
    if args.output and verdict:
        out = Path(args.output)
        n_file, h_file = _copy_monoids(N, H, out.parent, out.stem)
        _write_pair(Q, action, out, n_file, h_file)
        formats.write_extension(weak_semidirect_product(Q, action), out.with_suffix(".ext"))
        lines.append(f"written to {out.with_suffix('.ext')}")
    return (0 if verdict else 1), payload, lines


def cmd_matmon(args):
    mm = matrix_monoid(args.dim, args.field)
    M = mm.monoid
    Q = coarse_quotient(M, M)
    verdict = is_action(Q, mm.conjugation)
    payload = {
        "order": M.order,
        "invertible": len(mm.invertible()),
        "coarse_classes": Q.num_classes,
        "conjugation_compatible": bool(verdict),
    }
    lines = [
        f"matrix monoid M{args.dim}(F{args.field}) of order {M.order}",
        f"invertible matrices: {payload['invertible']}",
        f"coarse quotient classes: {Q.num_classes}",
        f"conjugation compatible with coarse quotient: {'yes' if verdict else 'no'}",
    ]
    if args.output:
        out = Path(args.output)
        formats.write_monoid(M, out.with_suffix(".mon"), comment=f"{args.dim}x{args.dim} matrices over F{args.field}")
        mon = out.with_suffix(".mon").name
        formats.write_quotient(Q, out.with_suffix(".quot"), mon, mon)
        formats.write_action(mm.conjugation, out.with_suffix(".act"))
        if verdict:
            ext = weak_semidirect_product(Q, mm.conjugation)
            formats.write_extension(ext, out.with_suffix(".ext"))
            payload["extension_order"] = ext.G.order
            lines.append(f"weak semidirect product of order {ext.G.order} written to {out.with_suffix('.ext')}")
    return (0 if verdict else 1), payload, lines


def cmd_oracle(args):
    from .oracle import brute_force_classify, oracle_leq

    N, H = formats.read_monoid(args.N), formats.read_monoid(args.H)
    exts = brute_force_classify(N, H, max_order=args.max_order)
    leq = oracle_leq(exts)
    payload = {"count": len(exts), "orders": [x.G.order for x in exts], "leq": leq.astype(int).tolist()}
    lines = [f"oracle: {len(exts)} extensions up to isomorphism"]
    lines += [f"  [{i}] |G|={x.G.order}" for i, x in enumerate(exts)]
    lines.append("order matrix (row <= column):")
    lines += _matrix_lines(leq)
    return 0, payload, lines


# --- parser ----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="wschreier",
        description="Weakly Schreier split extensions of finite monoids.",
        epilog=FORMATS_HELP,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.add_argument("--timing", action="store_true", help="include wall time in the report")
    p.add_argument("--threads", type=int, default=os.cpu_count() or 1, help="worker processes (default: cores)")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help_text):
        sp = sub.add_parser(name, help=help_text, epilog=FORMATS_HELP, formatter_class=argparse.RawDescriptionHelpFormatter)
        sp.set_defaults(func=func)
        return sp

    sp = add("check-ext", cmd_check_ext, "validate a split extension")
    sp.add_argument("file")
    sp = add("retractions", cmd_retractions, "count or list Schreier retractions")
    sp.add_argument("file")
    g = sp.add_mutually_exclusive_group()
    g.add_argument("--count", action="store_true", default=True)
    g.add_argument("--list", action="store_true")
    sp.add_argument("--cap", type=int, default=10**6)
    sp = add("quotients", cmd_quotients, "enumerate admissible quotients of N x H")
    sp.add_argument("N")
    sp.add_argument("H")
    sp.add_argument("--bound", type=int, default=36)
    sp.add_argument("-o", "--output", help="directory for .quot files")
    sp = add("actions", cmd_actions, "enumerate action classes for a quotient")
    sp.add_argument("quot")
    sp.add_argument("--bound", type=int, default=16)
    sp.add_argument("-o", "--output", help="directory for .act files")
    sp = add("build", cmd_build, "build the weak semidirect product of a quotient and action")
    sp.add_argument("quot")
    sp.add_argument("act")
    sp.add_argument("-o", "--output")
    sp = add("classify", cmd_classify, "classify weakly Schreier extensions of H by N")
    sp.add_argument("N")
    sp.add_argument("H")
    sp.add_argument("--oracle", action="store_true", help="cross-check against brute force")
    sp.add_argument("--quotient-bound", type=int, default=36)
    sp.add_argument("--action-bound", type=int, default=16)
    sp = add("morphism", cmd_morphism, "the unique morphism A -> B, or NONE")
    sp.add_argument("A")
    sp.add_argument("B")
    sp = add("glueing", cmd_glueing, "glueing extension along F: H -> N")
    sp.add_argument("N")
    sp.add_argument("H")
    sp.add_argument("F")
    sp.add_argument("--form", choices=["pairs", "quotient"], default="pairs",
                    help="pairs n <= f(h) (semilattice N) or classes of the quotient")
    sp.add_argument("-o", "--output")
    sp = add("coarse", cmd_coarse, "coarse quotient of N x H")
    sp.add_argument("N")
    sp.add_argument("H")
    sp.add_argument("--action", help=".act file to test against the coarse quotient")
    sp.add_argument("-o", "--output", help="output prefix")
    sp = add("matmon", cmd_matmon, "matrix monoid over F_p with conjugation")
    sp.add_argument("--dim", type=int, default=2)
    sp.add_argument("--field", type=int, default=2)
    sp.add_argument("-o", "--output", help="output prefix")
    sp = add("oracle", cmd_oracle, "brute-force classification")
    sp.add_argument("N")
    sp.add_argument("H")
    sp.add_argument("--max-order", type=int)
    return p


def _input_digests(args) -> dict:
    out = {}
    for key in ("file", "N", "H", "F", "A", "B", "quot", "act", "action"):
        val = getattr(args, key, None)
        if isinstance(val, str) and Path(val).is_file():
            out[key] = formats.table_digest(val)
    return out


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    start = time.perf_counter()
    try:
        code, payload, lines = args.func(args)
    except (WSchreierError, OSError, AssertionError) as exc:
        code = 2
        payload = {"error": type(exc).__name__, "message": str(exc)}
        lines = [f"error: {type(exc).__name__}: {exc}"]
    elapsed = time.perf_counter() - start
    # global flags are left out so the report does not depend on them
    report = RunReport(argv[argv.index(args.command):], _input_digests(args), payload, elapsed)
    if args.json:
        data = asdict(report)
        if not args.timing:
            del data["wall_time"]
        data["exit_code"] = code
        print(json.dumps(data, sort_keys=True, indent=2))
    else:
        print("\n".join(lines))
        if args.timing:
            print(f"wall time: {elapsed:.3f}s")
    return code


if __name__ == "__main__":
    sys.exit(main())
