"""Command-line front end.

Every command prints one JSON report.  Exit codes: 0 success, 2 validation
failure or a failed check, 3 resource limits (degree cap, relation store,
grouplike budget, quotient not certified finite at the requested degree).
"""

from __future__ import annotations

import argparse
import hashlib
import json
import re
import sys
import time

from . import __version__
from .comeasure import (
    ComeasuringCache,
    antipode_bijectivity,
    antipode_identities,
    antipode_S,
    verify_comeasuring,
)
from .errors import (
    CapExceeded,
    DegreeOverflow,
    EngineError,
    FrobeniusAxiomError,
    NotFinite,
    ResourceLimit,
    SpecParseError,
    UnknownCommand,
)
from .frobenius import (
    FrobeniusAlgebra,
    asymmetric_fixture,
    dual_frobenius,
    group_algebra,
    is_symmetric,
    matrix_algebra,
    named_group,
)
from .measure import (
    dual_coalgebra,
    gamma_pi_factorization_check,
    grouplikes,
    hopf_category_check,
    measuring_action,
    primitives,
    tensor_str,
    unit_j,
)
from .ncgb import DEFAULT_DEGREE, quotient_dimension
from .omega import OmegaAlgebra
from .reproduce import EXAMPLES, run_example
from .scalar import field_from_descriptor, parse_field

EXIT_OK, EXIT_INVALID, EXIT_LIMIT = 0, 2, 3


# ---------------------------------------------------------------------------
# algebra specs


def _locate(text, needle):
    """1-based (line, column) of the first occurrence of needle in text."""
    if not text or needle is None:
        return None, None
    i = text.find(needle)
    if i < 0:
        return None, None
    line = text.count("\n", 0, i) + 1
    col = i - (text.rfind("\n", 0, i) + 1) + 1
    return line, col


def _spec_error(msg, text=None, key=None):
    line, col = _locate(text, f'"{key}"' if key else None)
    if line is None and text is not None and not text.lstrip().startswith(("{", "[")):
        line, col = 1, 1
    return SpecParseError(msg, line, col)


def _read_spec_text(spec: str):
    s = spec.strip()
    if s == "-":
        return sys.stdin.read()
    if s.startswith("{"):
        return s
    if s.startswith("@") or s.endswith(".json"):
        path = s[1:] if s.startswith("@") else s
        try:
            with open(path, encoding="utf-8") as fh:
                return fh.read()
        except OSError as exc:
            raise SpecParseError(f"cannot read {path}: {exc.strerror}") from None
    return None


def parse_algebra_spec(spec, default_field="Q") -> FrobeniusAlgebra:
    """Short forms group:C3, matrix:2, dual:<spec>, fixture:asymmetric, field:F5/group:C2,
    or JSON (inline, @path, *.json or - for stdin)."""
    if isinstance(spec, dict):
        return _from_json(spec, default_field, None)
    text = _read_spec_text(spec)
    if text is None:
        return _from_short(spec, default_field)
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecParseError(f"invalid JSON: {exc.msg}", exc.lineno, exc.colno) from None
    if not isinstance(data, dict):
        raise SpecParseError("an algebra spec must be a JSON object", 1, 1)
    return _from_json(data, default_field, text)


def _from_short(spec: str, default_field):
    s = spec.strip()
    field = default_field
    m = re.match(r"field:([^/]+)/(.+)$", s)
    if m:
        field, s = m.group(1), m.group(2)
    kind, _, arg = s.partition(":")
    try:
        ctx = parse_field(field)
        if kind in ("k", "trivial"):
            return group_algebra(ctx, named_group("1"))
        if kind == "group":
            return group_algebra(ctx, named_group(arg))
        if kind == "matrix":
            return matrix_algebra(ctx, int(arg))
        if kind == "dual":
            return dual_frobenius(_from_short(f"field:{field}/{arg}", field))[0]
        if kind == "fixture" and arg == "asymmetric":
            return asymmetric_fixture(ctx)
    except (ValueError, EngineError) as exc:
        if isinstance(exc, FrobeniusAxiomError):
            raise
        raise SpecParseError(f"{spec!r}: {exc}", 1, 1) from None
    raise SpecParseError(f"unrecognized algebra spec {spec!r}", 1, 1)


def _from_json(data: dict, default_field, text):
    try:
        ctx = field_from_descriptor(data.get("field", default_field))
    except EngineError as exc:
        raise _spec_error(f"bad field: {exc}", text, "field") from None
    label = data.get("label")
    try:
        if "group" in data:
            g = data["group"]
            if isinstance(g, str):
                alg = group_algebra(ctx, named_group(g))
            elif not isinstance(g, dict) or "cayley" not in g:
                raise ValueError("group must be a name or an object with a cayley table")
            else:
                alg = group_algebra(ctx, g["cayley"], g.get("unit", 0), g.get("inverse"), g.get("labels"), label)
        elif "matrix" in data:
            alg = matrix_algebra(ctx, int(data["matrix"]))
        elif "dual_of" in data:
            inner = data["dual_of"]
            if isinstance(inner, dict):
                inner = dict(inner)
                inner.setdefault("field", data.get("field", default_field))
                base = _from_json(inner, default_field, text)
            else:
                base = _from_short(str(inner), data.get("field", default_field))
            alg = dual_frobenius(base)[0]
        elif "ops" in data and "basis" in data:
            raw = dict(data)
            raw["field"] = ctx.descriptor()
            alg = FrobeniusAlgebra.from_omega(OmegaAlgebra.from_dict(raw))
        else:
            raise _spec_error("spec needs one of group, matrix, dual_of or basis+ops", text, None)
    except FrobeniusAxiomError:
        raise
    except SpecParseError:
        raise
    except (KeyError, TypeError, ValueError, EngineError) as exc:
        key = next((k for k in ("group", "matrix", "dual_of", "ops") if k in data), None)
        raise _spec_error(f"bad algebra spec: {exc}", text, key) from None
    return alg.with_label(label) if label else alg


def _describe(alg):
    return {"label": alg.label, "field": alg.ctx.name(), "dim": alg.dim}


# ---------------------------------------------------------------------------
# reports


def _matrix_str(ctx, m):
    return [[ctx.to_str(x) for x in row] for row in m]


def _status_block(cm):
    res = quotient_dimension(cm.gb)
    out = {"status": res.kind}
    if res.kind == "undetermined":
        out["normal_words_per_degree"] = list(res.per_degree)
        out["normal_words_total"] = res.count
        out["quotient_infinite"] = res.quotient_infinite
        out["dimension"] = None
    else:
        out["dimension"] = res.dimension
    out["certificate_degree"] = cm.gb.certificate
    out["groebner_basis_size"] = len(cm.gb.basis)
    return out


def _need_b(args):
    if args.b is None:
        raise UnknownCommand(f"{args.command} needs --b")


def cmd_validate(args, cache):
    A = parse_algebra_spec(args.a, args.field)
    return {"valid": True, "algebra": _describe(A), "symmetric": is_symmetric(A)}, True


def cmd_build(args, cache):
    A = parse_algebra_spec(args.a, args.field)
    ctx = A.ctx
    return {"algebra": {**A.to_dict(), "frobenius": True}, "casimir": tensor_str(ctx, A.basis, A.casimir), "symmetric": is_symmetric(A)}, True


def _pair(args):
    _need_b(args)
    return parse_algebra_spec(args.a, args.field), parse_algebra_spec(args.b, args.field)


def cmd_comeasure(args, cache):
    A, B = _pair(args)
    cm = cache.get(A, B)
    out = {"source": _describe(A), "target": _describe(B)}
    out.update(_status_block(cm))
    out["generators"] = len(cm.presentation.labels)
    out["relations"] = len(cm.presentation.relations)
    out["rho"] = cm.to_dict()["rho"]
    if cm.is_finite:
        Q = cm.algebra
        out["basis"] = list(Q.labels)
        out["multiplication"] = [[Q.element_str(Q.table[i][j]) for j in range(Q.dim)] for i in range(Q.dim)]
        out["axiom_violations"] = [list(map(str, v)) for v in verify_comeasuring(cm)]
    return out, True


def cmd_dimension(args, cache):
    A, B = _pair(args)
    cm = cache.get(A, B)
    return {"source": _describe(A), "target": _describe(B), **_status_block(cm)}, True


def _coalgebra(cache, A, B):
    cm = cache.finite(A, B)
    return cm, dual_coalgebra(cm.algebra)


def cmd_dual_coalgebra(args, cache):
    A, B = _pair(args)
    cm, C = _coalgebra(cache, A, B)
    ctx = C.ctx
    comul = [tensor_str(ctx, C.labels, C.comul[i]) for i in range(C.dim)]
    bad = C.check()
    return {
        "dimension": C.dim,
        "basis": list(C.labels),
        "comultiplication": comul,
        "counit": [ctx.to_str(x) for x in C.counit],
        "axiom_violations": [list(map(str, v)) for v in bad],
    }, not bad


def cmd_grouplikes(args, cache):
    A, B = _pair(args)
    cm, C = _coalgebra(cache, A, B)
    gl = grouplikes(C, args.budget, strict=args.strict)
    action = measuring_action(cm)
    return {
        "count": len(gl),
        "complete": gl.complete,
        "method": gl.method,
        "searched": gl.searched,
        "grouplikes": [C.vector_str(v) for v in gl],
        "induced_maps": [_matrix_str(C.ctx, action.induced_map(v).matrix) for v in gl],
    }, True


def cmd_primitives(args, cache):
    A, B = _pair(args)
    cm, C = _coalgebra(cache, A, B)
    if args.g is None and args.h is None and cache.get(A, A) is cm:
        g = h = unit_j(A, cache)
        pair = "unit"
    else:
        gl = grouplikes(C, args.budget, strict=args.strict)
        gi, hi = args.g or 0, args.h or 0
        if max(gi, hi) >= len(gl):
            raise UnknownCommand(f"only {len(gl)} grouplikes found; --g/--h index out of range")
        g, h = gl.vectors[gi], gl.vectors[hi]
        pair = f"grouplikes {gi}, {hi}"
    basis = primitives(C, g, h)
    return {
        "pair": pair,
        "g": C.vector_str(g),
        "h": C.vector_str(h),
        "dimension": len(basis),
        "basis": [C.vector_str(v) for v in basis],
    }, True


def cmd_antipode(args, cache):
    A, B = _pair(args)
    cache.finite(A, B)
    cache.finite(B, A)
    S = antipode_S(A, B, cache)
    ctx = A.ctx
    bij = antipode_bijectivity(A, B, cache)
    ids = antipode_identities(A, B, cache)
    out = {
        "S_on_generators": dict(zip(S.domain.labels, S.generator_strings())),
        "matrix": _matrix_str(ctx, S.matrix()) if S.source is not None and S.codomain.dim else [],
        "bijective": bij,
        "convolution_identities": ids,
    }
    return out, all(bij.values()) and all(ids.values())


def cmd_hopf_check(args, cache):
    objs = args.objects or ([args.a] if args.a else None)
    if not objs:
        raise UnknownCommand("hopf-check needs --objects")
    X = [parse_algebra_spec(s, args.field) for s in objs]
    rep = hopf_category_check(X, cache)
    return rep.to_dict(), rep.passed


def cmd_duality_check(args, cache):
    A = parse_algebra_spec(args.a, args.field)
    B = parse_algebra_spec(args.b, args.field) if args.b else A
    rep = gamma_pi_factorization_check(A, B, cache)
    return rep.to_dict(A.ctx), rep.passed


def cmd_reproduce(args, cache):
    ids = list(EXAMPLES) if args.id == "all" else [args.id]
    if args.id == "all":
        ids = [i for i in ids if i != "c4-bound"]
    runs = [run_example(i, args.degree) for i in ids]
    ok = all(r.passed for r in runs if r.gating)
    return {"examples": [r.to_dict() for r in runs], "passed": ok}, ok


COMMANDS = {
    "validate": cmd_validate,
    "build": cmd_build,
    "comeasure": cmd_comeasure,
    "dimension": cmd_dimension,
    "dual-coalgebra": cmd_dual_coalgebra,
    "grouplikes": cmd_grouplikes,
    "primitives": cmd_primitives,
    "antipode": cmd_antipode,
    "hopf-check": cmd_hopf_check,
    "duality-check": cmd_duality_check,
    "reproduce": cmd_reproduce,
}


HELP = {
    "validate": "check the Frobenius axioms of --a",
    "build": "print the structure tables and Casimir element of --a",
    "comeasure": "universal comeasuring Q(A->B) with its coaction",
    "dimension": "dimension or status of Q(A->B)",
    "dual-coalgebra": "measuring coalgebra C(A->B), the dual of Q(A->B)",
    "grouplikes": "grouplikes of C(A->B) and the Frobenius morphisms they induce",
    "primitives": "(g, h)-primitives of C(A->B)",
    "antipode": "antipode S: Q(B->A) -> Q(A->B)^op, with bijectivity and convolution checks",
    "hopf-check": "Hopf-category axioms on a class of objects",
    "duality-check": "gamma, pi and s = pi gamma for a pair",
    "reproduce": "run a stored worked example and compare with expected values",
}


def build_parser():
    p = argparse.ArgumentParser(prog="frobmeas", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", metavar="command")

    def common(sp):
        sp.add_argument("--field", default="Q", help="default field: Q, F7, F5[t]/(t^2+2), ...")
        sp.add_argument("--degree", type=int, default=None, help=f"truncation degree (default {DEFAULT_DEGREE})")
        sp.add_argument("--budget", type=int, default=10**7, help="grouplike search budget")
        sp.add_argument("--max-terms", type=int, default=None, help="relation store soft cap in terms")
        sp.add_argument("--out", default=None, help="write the report here instead of stdout")
        sp.add_argument("--format", choices=["json"], default="json")

    for name in COMMANDS:
        sp = sub.add_parser(name, help=HELP[name])
        common(sp)
        if name == "reproduce":
            sp.add_argument("id", choices=list(EXAMPLES) + ["all"])
            continue
        if name == "hopf-check":
            sp.add_argument("--objects", nargs="+", help="algebra specs forming the object class")
        sp.add_argument("--a", required=name != "hopf-check", help="algebra spec")
        if name not in ("validate", "build", "hopf-check"):
            sp.add_argument("--b", required=name != "duality-check", help="algebra spec")
        if name in ("grouplikes", "primitives"):
            sp.add_argument("--strict", action="store_true", help="fail instead of a partial search")
        if name == "primitives":
            sp.add_argument("--g", type=int, default=None, help="index of the left grouplike")
            sp.add_argument("--h", type=int, default=None, help="index of the right grouplike")
    return p


def _inputs(args):
    skip = {"out", "format"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip}


def _exit_code_for(exc):
    if isinstance(exc, (ResourceLimit, CapExceeded, DegreeOverflow, NotFinite)):
        return EXIT_LIMIT
    return EXIT_INVALID


def run(argv=None):
    """(report, exit code, output path) without writing anything."""
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command is None:
        parser.print_help(sys.stderr)
        return None, EXIT_INVALID, None
    inputs = _inputs(args)
    report = {
        "command": args.command,
        "inputs": inputs,
        "inputs_digest": hashlib.sha256(json.dumps(inputs, sort_keys=True).encode()).hexdigest(),
        "engine_version": __version__,
        "degree": args.degree if args.degree is not None else DEFAULT_DEGREE,
    }
    kwargs = {} if args.max_terms is None else {"max_terms": args.max_terms}
    cache = ComeasuringCache(report["degree"], **kwargs)
    start = time.perf_counter()
    try:
        results, ok = COMMANDS[args.command](args, cache)
        report["results"] = results
        report["ok"] = ok
        code = EXIT_OK if ok else EXIT_INVALID
    except EngineError as exc:
        report["ok"] = False
        err = {"type": type(exc).__name__, "message": str(exc)}
        if isinstance(exc, SpecParseError):
            err.update(line=exc.line, column=exc.column)
        if isinstance(exc, FrobeniusAxiomError):
            err["violations"] = [list(map(str, v)) if isinstance(v, tuple) else str(v) for v in exc.violations]
        report["error"] = err
        code = _exit_code_for(exc)
    report["timing"] = {"seconds": round(time.perf_counter() - start, 6)}
    return report, code, args.out


def main(argv=None) -> int:
    report, code, out = run(argv)
    if report is None:
        return code
    text = json.dumps(report, indent=2, default=str) + "\n"
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
