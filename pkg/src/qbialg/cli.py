"""Batch front end: validate, double, quantize, primitivize, recognize.

Exit status is 0 on success, 1 when a check fails or the quantization has no
solution, and 2 on bad input (unparseable file, unknown builtin, bad flags).
Reports are deterministic: the same job renders to the same bytes.
"""
from __future__ import annotations

import argparse
import json
import random
import sys
import time
from dataclasses import dataclass, field

from . import __version__
from .bialgebra import (
    DuplicateEntry,
    LieBialgebra,
    UnknownGenerator,
    check_cocycle,
    check_compatibility,
    check_jacobi,
)
from .double import (
    InvalidBialgebra,
    UnsupportedFamily,
    build_double,
    build_family,
    check_pairing_invariance,
    is_self_dual,
    su2_standard,
)
from .quantize import (
    InvalidInput,
    NoSolution,
    _defect,
    friedrichs_primitivize,
    quantize,
    random_scramble,
)
from .scalars import format_scalar, parse_scalar
from .uea import CommutatorTable, UEAElement

__all__ = [
    "JobSpec",
    "Report",
    "ParseError",
    "UnknownBuiltin",
    "parse_bialgebra_file",
    "parse_bialgebra_document",
    "load_source",
    "run",
    "render_report",
    "main",
    "SCHEMA_VERSION",
]

SCHEMA_VERSION = 1
COMMANDS = ("validate", "double", "quantize", "primitivize", "recognize")


class ParseError(ValueError):
    """Malformed bialgebra document; carries a JSON path and, when known, line/column."""

    def __init__(self, message, path="", line=None, column=None):
        where = path or "<document>"
        if line is not None:
            where += f" (line {line}, column {column})"
        super().__init__(f"{where}: {message}")
        self.path = path
        self.line = line
        self.column = column


class UnknownBuiltin(ValueError):
    pass


@dataclass(frozen=True)
class JobSpec:
    command: str
    source: str
    builtin: bool = True
    K: int = 4
    D: int | None = None
    format: str = "text"
    seed: int | None = None

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ValueError(f"unknown command {self.command!r}")
        if self.K < 0:
            raise ValueError("order K must be >= 0")
        if self.D is not None and self.D < self.K + 1:
            raise ValueError("degree cap D must be >= K + 1")
        if self.format not in ("text", "json"):
            raise ValueError("format must be text or json")

    @property
    def degree(self):
        return self.K + 2 if self.D is None else self.D

    def to_dict(self):
        return {
            "command": self.command,
            "source": {"builtin" if self.builtin else "input": self.source},
            "order": self.K,
            "degree": self.degree,
            "format": self.format,
            "seed": self.seed,
        }


@dataclass
class Report:
    job: JobSpec
    status: str
    exit_code: int
    body: dict = field(default_factory=dict)
    timing: float = 0.0


# -- input -----------------------------------------------------------------------

def _reject_duplicates(pairs):
    out = {}
    for k, v in pairs:
        if k in out:
            raise DuplicateEntry(f"duplicate key {k!r}")
        out[k] = v
    return out


def _scalar(text, path):
    try:
        return parse_scalar(text)
    except (TypeError, ValueError) as exc:
        raise ParseError(str(exc), path) from None


def _pair(key, path):
    parts = key.split(",")
    if len(parts) != 2 or not all(p.strip() for p in parts):
        raise ParseError(f"expected 'A,B', got {key!r}", path)
    return parts[0].strip(), parts[1].strip()


def parse_bialgebra_document(doc):
    """LieBialgebra from the decoded JSON document; no axiom checks are run."""
    if not isinstance(doc, dict):
        raise ParseError("top level must be an object")
    unknown = set(doc) - {"generators", "brackets", "cocommutator"}
    if unknown:
        raise ParseError(f"unknown keys {sorted(unknown)}")
    gens = doc.get("generators")
    if not isinstance(gens, list) or not gens:
        raise ParseError("must be a nonempty list of names", "generators")
    if not all(isinstance(g, str) and g and "," not in g for g in gens):
        raise ParseError("names must be nonempty strings without commas", "generators")
    if len(set(gens)) != len(gens):
        raise DuplicateEntry("duplicate generator name")
    known = set(gens)

    def check(name):
        if name not in known:
            raise UnknownGenerator(name)
        return name

    brackets = {}
    seen = set()
    raw = doc.get("brackets", {})
    if not isinstance(raw, dict):
        raise ParseError("must be an object", "brackets")
    for key, row in raw.items():
        path = f"brackets.{key}"
        a, b = map(check, _pair(key, path))
        if frozenset((a, b)) in seen:
            raise DuplicateEntry(f"bracket [{a},{b}] given twice")
        seen.add(frozenset((a, b)))
        if not isinstance(row, dict):
            raise ParseError("must be an object", path)
        brackets[(a, b)] = {check(r): _scalar(v, f"{path}.{r}") for r, v in row.items()}

    cocom = {}
    raw = doc.get("cocommutator", {})
    if not isinstance(raw, dict):
        raise ParseError("must be an object", "cocommutator")
    for p, row in raw.items():
        path = f"cocommutator.{p}"
        check(p)
        if not isinstance(row, dict):
            raise ParseError("must be an object", path)
        entries = {}
        for key, v in row.items():
            q, r = map(check, _pair(key, f"{path}.{key}"))
            if (q, r) in entries or (r, q) in entries:
                raise DuplicateEntry(f"wedge {q},{r} given twice for {p}")
            entries[(q, r)] = _scalar(v, f"{path}.{key}")
        cocom[p] = entries
    try:
        return LieBialgebra.from_names(gens, brackets, cocom)
    except (IndexError, ValueError) as exc:
        if isinstance(exc, DuplicateEntry):
            raise
        raise ParseError(str(exc)) from None


def parse_bialgebra_file(path):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except UnicodeDecodeError as exc:
        raise ParseError(f"not UTF-8: {exc}") from None
    try:
        doc = json.loads(text, object_pairs_hook=_reject_duplicates)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, line=exc.lineno, column=exc.colno) from None
    return parse_bialgebra_document(doc)


def load_source(spec):
    """``(bialgebra, double or None)`` for the job's source."""
    if not spec.builtin:
        return parse_bialgebra_file(spec.source), None
    if spec.source == "su2":
        return su2_standard(), None
    try:
        d = build_family(spec.source)
    except UnsupportedFamily as exc:
        raise UnknownBuiltin(f"unknown builtin {spec.source!r}: {exc}") from None
    return d.physical, d


# -- commands --------------------------------------------------------------------

def _checks(b):
    names = b.names
    reports = [check_jacobi(b), check_cocycle(b), check_compatibility(b)]
    return {r.check: r.to_dict(names) for r in reports}, all(reports)


def _validate(spec):
    g, d = load_source(spec)
    if d is None:
        checks, ok = _checks(g)
        return ok, {"bialgebra": g.to_dict(), "checks": checks}
    checks, ok = _checks(d.full)
    pairing = check_pairing_invariance(d)
    self_dual = is_self_dual(d)
    checks["pairing_invariance"] = pairing.to_dict(d.full.names)
    body = {"family": d.family, "generators": d.full.names, "checks": checks,
            "self_dual": bool(self_dual)}
    return ok and bool(pairing), body


def _double(spec):
    g, d = load_source(spec)
    if d is None:
        try:
            d = build_double(g)
        except InvalidBialgebra as exc:
            checks = {r.check: r.to_dict(g.names) for r in exc.reports}
            return False, {"error": str(exc), "checks": checks}
    checks, ok = _checks(d.full)
    pairing = check_pairing_invariance(d)
    checks["pairing_invariance"] = pairing.to_dict(d.full.names)
    full = d.full.to_dict()
    body = {
        "family": d.family,
        "generators": full["generators"],
        "brackets": full["brackets"],
        "cocommutator": full["cocommutator"],
        "pairing": [[format_scalar(v) for v in row] for row in d.pairing],
        "checks": checks,
        "self_dual": bool(is_self_dual(d)),
    }
    if d.physical is not None:
        body["physical"] = d.physical.to_dict()
    return ok and bool(pairing), body


def _series_text(el, K):
    out = {}
    for k in range(K + 1):
        part = {key: v for key, v in el.data.items() if key[0] == k}
        if part:
            out[str(k)] = UEAElement._wrap(el.names, part, k).render()
    return out


def _quantization(spec):
    g, _ = load_source(spec)
    r = quantize(g, K=spec.K, D=spec.degree)
    names = r.names
    coproducts = {}
    for i, name in enumerate(names):
        coproducts[name] = {str(k): r.coproducts.order(i, k).render() for k in range(r.K + 1)
                            if not r.coproducts.order(i, k).is_zero()}
    commutators = {}
    for (i, j) in sorted(r.commutators.entries):
        el = r.commutators.bracket(i, j, r.K)
        if not el.is_zero():
            commutators[f"[{names[i]},{names[j]}]"] = _series_text(el, r.K)
    recognized = {}
    for key, form in (r.recognized or {}).items():
        if form:
            d = form.to_dict()
            d.setdefault("rendered", form.render())
            recognized[key] = d
        else:
            recognized[key] = form.to_dict()
    return r, {"bialgebra": g.to_dict(), "order": r.K, "degree": r.D,
               "coproducts": coproducts, "commutators": commutators,
               "recognized": recognized, "residual_gauge_dims": list(r.residual_gauge_dims),
               "basis_changes": _log_entries(r.log, names)}


def _quantize(spec):
    _, body = _quantization(spec)
    return True, body


def _recognize(spec):
    r, body = _quantization(spec)
    return True, {"order": body["order"], "recognized": body["recognized"]}


def _log_entries(log, names):
    return [{"step": step, "generator": names[i], "subtracted": poly.render()}
            for step, i, poly in log.entries]


def _primitivize(spec):
    g, _ = load_source(spec)
    seed = 0 if spec.seed is None else spec.seed
    table = CommutatorTable.from_bialgebra(g)
    names = g.names
    basis = random_scramble(names, random.Random(seed))
    recovered, log = friedrichs_primitivize(basis, table, spec.degree)
    primitive = True
    for el in recovered.values():
        res = _defect(el, None, g.n, 0)
        if any(sum(map(sum, key[1])) <= spec.degree and not v.is_zero() for key, v in res.items()):
            primitive = False
    exact = all(recovered[n] == UEAElement.generator(names, n) for n in names)
    body = {
        "seed": seed,
        "degree": spec.degree,
        "scrambled": {n: basis[n].render() for n in names},
        "recovered": {n: recovered[n].render() for n in names},
        "basis_changes": _log_entries(log, names),
        "primitive": primitive,
        "recovered_generators": exact,
    }
    return primitive, body


_DISPATCH = {
    "validate": _validate,
    "double": _double,
    "quantize": _quantize,
    "primitivize": _primitivize,
    "recognize": _recognize,
}


def run(spec):
    """Execute a job. Input errors propagate; check failures and NoSolution become exit 1."""
    start = time.perf_counter()
    try:
        ok, body = _DISPATCH[spec.command](spec)
    except (NoSolution, InvalidInput) as exc:
        body = {"error": type(exc).__name__, "message": str(exc)}
        residual = getattr(exc, "residual", None)
        if residual is not None:
            body["residual"] = residual.render()
        ok = False
    elapsed = time.perf_counter() - start
    return Report(spec, "ok" if ok else "failed", 0 if ok else 1, body, elapsed)


# -- rendering -------------------------------------------------------------------

def _envelope(report, include_timing):
    out = {
        "schema_version": SCHEMA_VERSION,
        "engine": {"name": "qbialg", "version": __version__},
        "job": report.job.to_dict(),
        "status": report.status,
        "exit_code": report.exit_code,
        "result": report.body,
    }
    if include_timing:
        out["timing_seconds"] = round(report.timing, 6)
    return out


def _text_lines(value, indent=0):
    pad = "  " * indent
    if isinstance(value, dict):
        for k, v in value.items():
            if isinstance(v, (dict, list)) and v and not _flat_list(v):
                yield f"{pad}{k}:"
                yield from _text_lines(v, indent + 1)
            else:
                yield f"{pad}{k}: {_atom(v)}"
    elif isinstance(value, list):
        for v in value:
            if isinstance(v, (dict, list)) and not _flat_list(v):
                yield f"{pad}-"
                yield from _text_lines(v, indent + 1)
            else:
                yield f"{pad}- {_atom(v)}"
    else:
        yield f"{pad}{_atom(value)}"


def _flat_list(v):
    return isinstance(v, list) and all(not isinstance(x, (dict, list)) for x in v)


def _atom(v):
    if isinstance(v, bool):
        return "true" if v else "false"
    if v is None:
        return "null"
    if isinstance(v, list):
        return "[" + ", ".join(_atom(x) for x in v) + "]"
    if isinstance(v, dict):
        return "{}"
    return str(v)


def render_report(report, fmt=None, include_timing=False):
    """Bytes of the report. Timing is left out unless asked for, so output stays reproducible."""
    fmt = fmt or report.job.format
    env = _envelope(report, include_timing)
    if fmt == "json":
        return (json.dumps(env, indent=2, ensure_ascii=False) + "\n").encode("utf-8")
    if fmt != "text":
        raise ValueError(f"unknown format {fmt!r}")
    return ("\n".join(_text_lines(env)) + "\n").encode("utf-8")


# -- entry point -----------------------------------------------------------------

def _parser():
    p = argparse.ArgumentParser(prog="qbialg", description=__doc__.splitlines()[0])
    p.add_argument("command", choices=COMMANDS)
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--input", metavar="FILE", help="bialgebra JSON document")
    src.add_argument("--builtin", metavar="NAME", help="su2, su2+t1 or gl:N")
    p.add_argument("--order", type=int, default=4, metavar="K")
    p.add_argument("--degree", type=int, default=None, metavar="D")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--seed", type=int, default=None, metavar="N")
    p.add_argument("--out", metavar="FILE", help="write the report here instead of stdout")
    p.add_argument("--timing", action="store_true", help="include wall time (breaks byte-identity)")
    return p


def main(argv=None):
    args = _parser().parse_args(argv)
    try:
        spec = JobSpec(
            command=args.command,
            source=args.builtin if args.builtin is not None else args.input,
            builtin=args.builtin is not None,
            K=args.order,
            D=args.degree,
            format=args.format,
            seed=args.seed,
        )
        report = run(spec)
    except (ParseError, UnknownBuiltin, UnknownGenerator, DuplicateEntry,
            OSError, ValueError) as exc:
        print(f"qbialg: error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    data = render_report(report, include_timing=args.timing)
    if args.out:
        with open(args.out, "wb") as fh:
            fh.write(data)
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
