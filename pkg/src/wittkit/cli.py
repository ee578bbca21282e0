"""Command-line front end.

Verbs: ``eval`` (group queries in the expression language), ``tate``,
``node``, ``koszul-verify`` and ``table``.  Exit codes: 0 on success, 1 on
usage errors, 2 when a theorem hypothesis is checked and fails.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from concurrent.futures import ThreadPoolExecutor
from importlib import resources

from wittkit.dsl import ParseError, parse_field, parse_group, parse_scheme
from wittkit.involution import InvolutionModule, hyperbolic, tate
from wittkit.wittcalc import (
    FieldDesc,
    FieldError,
    HypothesisFailed,
    NotTabulated,
    PuncturedAffine,
    Symbolic,
    Trace,
    WittCalcError,
    evaluate,
    gw_projective,
    node_laurent_witt,
    node_witt,
    witt_les_punctured,
)
from wittkit.wittcalc.finite_field import prime_power
from wittkit.zmodule import FgModule, ModuleError

EXIT_OK, EXIT_USAGE, EXIT_HYPOTHESIS = 0, 1, 2


class UsageError(ValueError):
    pass


def report_schema() -> dict:
    return json.loads(resources.files("wittkit").joinpath("schema/report.schema.json").read_text())


def threads() -> int:
    try:
        return max(1, int(os.environ.get("WITTKIT_THREADS", "1")))
    except ValueError:
        return 1


def parse_int_set(text: str) -> list[int]:
    """``"3..49"``, ``"3,5,7"`` or ``"5"``."""
    out = []
    for part in text.split(","):
        part = part.strip()
        if ".." in part:
            a, b = part.split("..", 1)
            out.extend(range(int(a), int(b) + 1))
        elif part:
            out.append(int(part))
    return out


def _report(query: str, result, trace: Trace | None = None, detail=None) -> dict:
    rep = {"query": query, "result": result,
           "rules_applied": trace.to_json() if trace else [],
           "warnings": list(trace.warnings) if trace else []}
    if trace and trace.notes:
        rep["notes"] = list(trace.notes)
    if detail is not None:
        rep["detail"] = detail
    return rep


def _error_report(query: str, kind: str, message: str, trace: Trace | None = None, pair=None) -> dict:
    rep = _report(query, None, trace)
    rep["error"] = {"type": kind, "message": message}
    if pair is not None:
        rep["error"]["tate"] = pair.to_json()
    return rep


# verbs ---------------------------------------------------------------------

def eval_query(text: str, les: bool = False) -> tuple[dict, int, str]:
    """Evaluate one group query; returns (report, exit code, text output)."""
    text = text.strip()
    trace = Trace()
    try:
        atom = parse_group(text)
        if les:
            if atom.kind != "W" or not isinstance(atom.scheme, PuncturedAffine):
                raise UsageError("--les needs a query W^r(X x C_n)")
            rep = witt_les_punctured(atom.scheme.base, atom.scheme.n, atom.r, trace)
            lines = [f"{t.position}: {t.group}" for t in rep.terms] + [rep.flag]
            return _report(text, rep.to_json(), trace), EXIT_OK, "\n".join(lines)
        result = evaluate(atom, trace)
    except ParseError as e:
        return _error_report(text, "UsageError", str(e)), EXIT_USAGE, e.pointer()
    except HypothesisFailed as e:
        return (_error_report(text, "HypothesisFailed", str(e), trace, e.pair), EXIT_HYPOTHESIS,
                f"HypothesisFailed: {e}")
    except (UsageError, NotTabulated, WittCalcError, FieldError, ValueError) as e:
        return _error_report(text, "UsageError", str(e), trace), EXIT_USAGE, f"error: {e}"
    rep = _report(text, str(result), trace, result.to_json())
    return rep, EXIT_OK, str(result)


def _module_from_text(text: str) -> FgModule:
    text = text.strip()
    if text == "0":
        return FgModule.zero()
    if text == "Z":
        return FgModule.free(1)
    if text.startswith("Z/"):
        return FgModule.cyclic(int(text[2:]))
    raise UsageError(f"cannot read module {text!r} (use 0, Z or Z/d)")


def involution_from_text(text: str) -> InvolutionModule:
    """JSON ``{relations, sigma, ...}``, or ``M``, ``M:-1``, ``hyp(M)`` with M in 0, Z, Z/d."""
    text = text.strip()
    if text.startswith("{"):
        return InvolutionModule.from_json(json.loads(text))
    if text.startswith("hyp(") and text.endswith(")"):
        return hyperbolic(_module_from_text(text[4:-1]))
    if text.endswith(":-1"):
        return InvolutionModule.sign(_module_from_text(text[:-3]))
    return InvolutionModule.trivial(_module_from_text(text))


def tate_query(text: str) -> tuple[dict, int, str]:
    try:
        pair = tate(involution_from_text(text))
    except (UsageError, ModuleError, ValueError, KeyError) as e:
        return _error_report(text, "UsageError", str(e)), EXIT_USAGE, f"error: {e}"
    return _report(text, str(pair), detail=pair.to_json()), EXIT_OK, str(pair)


def random_hyperbolic_check(count: int, seed: int) -> tuple[dict, int, str]:
    """Tate groups of ``count`` seeded random hyperbolic modules."""
    rng = random.Random(seed)
    failures = []
    for _ in range(count):
        rank = rng.randint(0, 6)
        rows = [[rng.randint(-6, 6) for _ in range(rank)] for _ in range(rng.randint(0, rank))]
        a = FgModule(rows, ngens=rank)
        if not tate(hyperbolic(a)).vanishes:
            failures.append(str(a.canonical_form))
    query = f"tate --random {count} --seed {seed}"
    text = f"{count - len(failures)}/{count} hyperbolic modules have vanishing Tate cohomology"
    return _report(query, text, detail={"failures": failures}), EXIT_OK, text


def node_query(field_text: str) -> tuple[dict, int, str]:
    trace = Trace()
    try:
        k = parse_field(field_text)
        w = node_witt(k, trace)
        lw = node_laurent_witt(k, trace)
    except (ParseError, FieldError, NotTabulated) as e:
        return _error_report(field_text, "UsageError", str(e)), EXIT_USAGE, f"error: {e}"
    detail = {"node": [str(g.canonical_form) for g in w.groups],
              "laurent": [str(g.canonical_form) for g in lw.groups]}
    lines = [f"W^{r}(node({k})) = {w[r].canonical_form}" for r in range(4)]
    lines += [f"W^{r}(node({k}) x Gm) = {lw[r].canonical_form}" for r in range(4)]
    return _report(f"node({k})", str(w), trace, detail), EXIT_OK, "\n".join(lines)


def koszul_query(n: int, bound: int | None, fields: list[str]) -> tuple[dict, int, str]:
    from wittkit.koszul.verify import report

    rep = report(n, bound, tuple(fields))
    lines = []
    for c in rep["checks"]:
        status = "PASS" if c["result"] else "FAIL"
        rng = "" if c["degree_range"] is None else f" d in {c['degree_range']}"
        lines.append(f"{status} {c['check']} n={n} {c.get('field', '')}{rng}".rstrip())
    query = f"koszul-verify --n {n} --bound {rep['bound']} --field {','.join(fields)}"
    return _report(query, rep), EXIT_OK, "\n".join(lines)


def table_witt_fields(qs: list[int]) -> tuple[list, str]:
    rows = []
    for q in qs:
        pk = prime_power(q)
        if pk is None or pk[0] == 2:
            continue
        k = FieldDesc.finite(q)
        rows.append({"q": q, "q_mod_4": q % 4, "W": str(k.witt_group.canonical_form),
                     "I": str(k.fundamental_ideal.canonical_form)})
    text = "\n".join(f"F{r['q']:<4} q%4={r['q_mod_4']}  W = {r['W']:<12} I = {r['I']}" for r in rows)
    return rows, text


def table_node(qs: list[int]) -> tuple[list, str]:
    rows = []
    for q in qs:
        k = FieldDesc.finite(q)
        w, lw = node_witt(k), node_laurent_witt(k)
        rows.append({"q": q, "W": [str(g.canonical_form) for g in w.groups],
                     "W_laurent_0": str(lw[0].canonical_form), "W_laurent_1": str(lw[1].canonical_form)})
    text = "\n".join(f"F{r['q']:<4} " + " | ".join(r["W"]) + f" || R[t,1/t]: {r['W_laurent_0']} | {r['W_laurent_1']}"
                     for r in rows)
    return rows, text


def table_gw_proj(ns: list[int]) -> tuple[list, str]:
    x = Symbolic("X")
    rows = []
    for n in ns:
        for parity in (0, 1):
            a = gw_projective(x, n, parity, 0)
            b = gw_projective(x, n, parity, 0, method="fibration")
            rows.append({"n": n, "twist": "even" if parity == 0 else "odd", "value": str(a), "fibration_agrees": a == b})
    text = "\n".join(f"n={r['n']} O(i) {r['twist']:<4}: {r['value']}  [{'agrees' if r['fibration_agrees'] else 'DIFFERS'}]"
                     for r in rows)
    return rows, text


def table_query(name: str, qs: str | None, ns: str | None) -> tuple[dict, int, str]:
    try:
        if name == "witt-fields":
            rows, text = table_witt_fields(parse_int_set(qs or "3..49"))
        elif name == "node":
            rows, text = table_node(parse_int_set(qs or "3,5,7,9"))
        elif name == "gw-proj":
            rows, text = table_gw_proj(parse_int_set(ns or "0..5"))
        else:
            raise UsageError(f"unknown table {name}")
    except (UsageError, FieldError, ValueError) as e:
        return _error_report(f"table {name}", "UsageError", str(e)), EXIT_USAGE, f"error: {e}"
    return _report(f"table {name}", rows), EXIT_OK, text


# driver --------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit JSON reports")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized checks")
    p = argparse.ArgumentParser(prog="wittkit", description=__doc__.splitlines()[0], parents=[common])
    sub = p.add_subparsers(dest="verb", required=True)

    e = sub.add_parser("eval", parents=[common], help="evaluate a group query; reads stdin when omitted")
    e.add_argument("expr", nargs="?", default="-")
    e.add_argument("--les", action="store_true", help="print the long exact sequence instead")

    t = sub.add_parser("tate", parents=[common], help="Tate cohomology of a module with involution")
    t.add_argument("module", nargs="?", help="JSON, or M, M:-1, hyp(M) with M in 0, Z, Z/d")
    t.add_argument("--random", type=int, default=0, help="check N seeded random hyperbolic modules")

    nd = sub.add_parser("node", parents=[common], help="Witt groups of the node and its Laurent ring")
    nd.add_argument("field", nargs="*", default=[])
    nd.add_argument("--q", help="finite fields, e.g. 3,5 or 3..9")

    kv = sub.add_parser("koszul-verify", parents=[common], help="verification suite for b_n")
    kv.add_argument("--n", default="1..4", help="n or a range such as 1..4")
    kv.add_argument("--bound", type=int, default=None, help="highest graded degree (default 3n+2)")
    kv.add_argument("--field", action="append", choices=["Q", "Fp"], help="base field(s); default both")

    tb = sub.add_parser("table", parents=[common], help="formatted tables")
    tb.add_argument("name", choices=["witt-fields", "node", "gw-proj"])
    tb.add_argument("--q")
    tb.add_argument("--n")
    return p


def _emit(results: list[tuple[dict, int, str]], as_json: bool) -> int:
    codes = set()
    for rep, rc, text in results:
        codes.add(rc)
        if as_json:
            print(json.dumps(rep, ensure_ascii=False, sort_keys=True))
        else:
            stream = sys.stdout if rc == EXIT_OK else sys.stderr
            print(text, file=stream)
            for w in rep.get("warnings", []):
                print(f"warning: {w}", file=sys.stderr)
    # usage errors dominate hypothesis failures
    for rc in (EXIT_USAGE, EXIT_HYPOTHESIS):
        if rc in codes:
            return rc
    return EXIT_OK


def _batch(fn, items: list) -> list:
    """Apply ``fn`` to every item, possibly in threads, keeping input order."""
    n = threads()
    if n > 1 and len(items) > 1:
        with ThreadPoolExecutor(max_workers=n) as pool:
            return list(pool.map(fn, items))
    return [fn(x) for x in items]


def run(argv: list[str] | None = None, stdin=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_USAGE
    stdin = stdin if stdin is not None else sys.stdin

    if args.verb == "eval":
        if args.expr == "-":
            exprs = [ln.strip() for ln in stdin if ln.strip() and not ln.lstrip().startswith("#")]
        else:
            exprs = [args.expr]
        return _emit(_batch(lambda s: eval_query(s, args.les), exprs), args.json)
    if args.verb == "tate":
        if args.random:
            return _emit([random_hyperbolic_check(args.random, args.seed)], args.json)
        if args.module is None:
            mods = [ln.strip() for ln in stdin if ln.strip()]
        else:
            mods = [args.module]
        return _emit(_batch(tate_query, mods), args.json)
    if args.verb == "node":
        fields = list(args.field)
        if args.q:
            try:
                fields += [f"F{q}" for q in parse_int_set(args.q)]
            except ValueError as e:
                return _emit([(_error_report("node", "UsageError", str(e)), EXIT_USAGE, f"error: {e}")], args.json)
        if not fields:
            fields = ["F3", "F5"]
        return _emit(_batch(node_query, fields), args.json)
    if args.verb == "koszul-verify":
        try:
            ns = parse_int_set(args.n)
        except ValueError as e:
            return _emit([(_error_report("koszul-verify", "UsageError", str(e)), EXIT_USAGE, f"error: {e}")],
                         args.json)
        fields = args.field or ["Q", "Fp"]
        return _emit([koszul_query(n, args.bound, fields) for n in ns], args.json)
    if args.verb == "table":
        return _emit([table_query(args.name, args.q, args.n)], args.json)
    return EXIT_USAGE


def main(argv: list[str] | None = None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
