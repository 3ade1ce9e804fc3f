"""Family scans and seeded random searches over plane curve germs.

Search results are stored as JSON Lines: a header line with the schema
version, the configuration and the seed, then one line per sample in sample
order.  Sample ``k`` is always the ``k``-th draw from the generator, so a run
that is interrupted and resumed writes exactly the bytes an uninterrupted
run would.  Summaries are recomputed from the lines, never stored.

The random generator is splitmix64 (see ``docs/rng.md``).
"""

from __future__ import annotations

import ast
import json
import re
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator, Sequence

from gmpy2 import mpq

from .corpus import GOLDEN_FIELDS, load_corpus
from .errors import CurvesingError, InputError, InternalInvariantError
from .exactnum import render_rational
from .invariants import full_record, record_to_json
from .localstd import StepBoundExceeded
from .numberfield import TowerLimitError
from .polyring import Polynomial, PolynomialSyntaxError, VariableSet
from .series import InsufficientPrecision

__all__ = [
    "SCHEMA_VERSION",
    "REFUTATION_THRESHOLD",
    "SplitMix64",
    "FamilyTemplate",
    "parse_range",
    "SearchConfig",
    "DEFAULT_SUPPORT",
    "DEFAULT_COEFFICIENTS",
    "ScanEntry",
    "ScanResult",
    "summarize",
    "scan_family",
    "search_support",
    "sample_polynomials",
    "load_results",
    "verify_corpus",
    "CorpusReport",
]

SCHEMA_VERSION = 1
REFUTATION_THRESHOLD = mpq(4, 3)
CANDIDATE_LABEL = ("candidate refutation - requires independent re-verification "
                   "with the jet oracle and increased Puiseux precision")

_MASK = (1 << 64) - 1


class SplitMix64:
    """The splitmix64 generator; ``next()`` returns a 64-bit unsigned integer."""

    def __init__(self, seed: int):
        self.state = seed & _MASK

    def next(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return z ^ (z >> 31)

    def choice(self, seq: Sequence):
        return seq[self.next() % len(seq)]


# -- family templates ------------------------------------------------------------


_IMPLICIT_MUL = re.compile(r"(\d)\s*([A-Za-z_(])")
_GROUP = re.compile(r"\^\s*\(([^()]*)\)")


def _eval_int(expr: str, param: str, value: int) -> int:
    """Evaluate an integer expression in one parameter (``2m+1``, ``3*(m-1)``)."""
    src = _IMPLICIT_MUL.sub(r"\1*\2", expr)
    try:
        tree = ast.parse(src, mode="eval")
    except SyntaxError as exc:
        raise InputError(f"bad exponent expression {expr!r}") from exc

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return node.value
        if isinstance(node, ast.Name) and node.id == param:
            return value
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = ev(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp):
            a, b = ev(node.left), ev(node.right)
            if isinstance(node.op, ast.Add):
                return a + b
            if isinstance(node.op, ast.Sub):
                return a - b
            if isinstance(node.op, ast.Mult):
                return a * b
            if isinstance(node.op, ast.FloorDiv) and b:
                return a // b
        raise InputError(f"unsupported exponent expression {expr!r}")

    return ev(tree)


def parse_range(text: str) -> range:
    """``"2..5"`` (inclusive) or a single integer."""
    m = re.fullmatch(r"\s*(-?\d+)\s*(?:\.\.\s*(-?\d+)\s*)?", text)
    if not m:
        raise InputError(f"bad range {text!r}; expected a..b")
    lo = int(m.group(1))
    hi = int(m.group(2)) if m.group(2) is not None else lo
    if hi < lo:
        raise InputError(f"empty range {text!r}")
    return range(lo, hi + 1)


@dataclass(frozen=True)
class FamilyTemplate:
    """A polynomial whose exponents depend on an integer parameter.

    Exponents are written ``^(2m+1)`` or ``^m``; implicit products such as
    ``2m`` are allowed inside the parentheses.
    """

    text: str
    values: tuple = ()
    param: str = "m"
    variables: str = "x,y"

    def expand(self, value: int) -> str:
        p = re.escape(self.param)

        def group(mt):
            v = _eval_int(mt.group(1), self.param, value)
            if v < 0:
                raise InputError(f"negative exponent at {self.param}={value}")
            return f"^{v}"

        out = _GROUP.sub(group, self.text)
        out = re.sub(rf"\^\s*(\d*)\s*\*?\s*{p}\b",
                     lambda mt: f"^{(int(mt.group(1)) if mt.group(1) else 1) * value}", out)
        if re.search(rf"\b{p}\b", out):
            raise InputError(f"parameter {self.param!r} may only appear in exponents")
        return out

    def instantiate(self, value: int) -> Polynomial:
        return Polynomial.parse(self.expand(value), self.variables)


# -- results -----------------------------------------------------------------------


@dataclass(frozen=True)
class ScanEntry:
    key: object
    input: str
    record: dict | None = None
    error: str | None = None
    kind: str | None = None

    @property
    def rho(self):
        if self.record is None or self.record.get("rho") is None:
            return None
        r = self.record["rho"]
        return mpq(r["num"], r["den"])

    def to_json(self, key_name: str = "id") -> dict:
        out = {key_name: self.key}
        if self.record is not None:
            out.update(self.record)
        else:
            out["input"] = self.input
            out["error"] = self.error
            out["kind"] = self.kind
        return out


@dataclass(frozen=True)
class ScanResult:
    entries: tuple
    summary: dict = field(default_factory=dict)


def summarize(entries: Sequence[ScanEntry], ordered: bool = False) -> dict:
    """Summary statistics recomputed from ``entries``.

    ``ordered`` adds a verdict on strict increase of rho along the entries.
    """
    best = None
    candidates, internal, failures, errors = [], [], [], []
    rhos = []
    for e in entries:
        if e.record is None:
            errors.append({"key": e.key, "input": e.input, "error": e.error})
            rhos.append(None)
            continue
        rho = e.rho
        rhos.append(rho)
        bad = [c["name"] for c in e.record["checks"] if c["status"] not in ("pass", "n/a")]
        if bad:
            failures.append({"key": e.key, "input": e.input, "checks": bad})
        if rho is None:
            continue
        if best is None or rho > best[0]:
            best = (rho, e)
        if rho >= 2:
            internal.append({"key": e.key, "input": e.input, "rho": render_rational(rho)})
        elif rho >= REFUTATION_THRESHOLD:
            candidates.append({"key": e.key, "input": e.input, "rho": render_rational(rho),
                               "label": CANDIDATE_LABEL})
    summary = {
        "count": len(entries),
        "max_rho": None if best is None else render_rational(best[0]),
        "argmax": None if best is None else {"key": best[1].key, "input": best[1].input},
        "check_failures": failures,
        "errors": errors,
        "refutation_candidates": candidates,
        "internal_errors": internal,
    }
    if ordered:
        known = [r for r in rhos if r is not None]
        summary["strictly_increasing"] = (len(known) == len(rhos)
                                          and all(a < b for a, b in zip(known, known[1:])))
        summary["all_below_4_3"] = bool(known) and all(r < REFUTATION_THRESHOLD for r in known)
    return summary


_SOFT_ERRORS = (CurvesingError, PolynomialSyntaxError, TowerLimitError, InsufficientPrecision)


def _evaluate(key, text: str, variables: str) -> ScanEntry:
    try:
        f = Polynomial.parse(text, variables)
        rec = full_record(f, label=text)
    except InternalInvariantError:
        raise
    except _SOFT_ERRORS as exc:
        return ScanEntry(key, text, error=str(exc), kind=type(exc).__name__)
    return ScanEntry(key, text, record=record_to_json(rec))


def _guard(entry: ScanEntry) -> ScanEntry:
    rho = entry.rho
    if rho is not None and rho >= 2:
        raise InternalInvariantError(
            f"rho = {render_rational(rho)} >= 2 for {entry.input}: impossible, engine bug")
    return entry


def scan_family(t: FamilyTemplate, values: Iterable[int] | None = None) -> ScanResult:
    """Records for each parameter value, in order, with a monotonicity verdict."""
    vals = list(values if values is not None else t.values)
    entries = []
    for v in vals:
        try:
            text = t.expand(v)
        except InputError as exc:
            entries.append(ScanEntry(v, t.text, error=str(exc), kind="InputError"))
            continue
        entries.append(_guard(_evaluate(v, text, t.variables)))
    return ScanResult(tuple(entries), summarize(entries, ordered=True))


# -- random search -------------------------------------------------------------------


def _mon(a: int, b: int) -> tuple:
    return (a, b)


DEFAULT_SUPPORT = (_mon(7, 0), _mon(0, 6), _mon(3, 4), _mon(4, 3), _mon(5, 2), _mon(2, 5),
                   _mon(4, 4))
DEFAULT_COEFFICIENTS = (-3, -2, -1, 1, 2, 3)


@dataclass(frozen=True)
class SearchConfig:
    """Uniform sampling of coefficients on a fixed Newton support."""

    support: tuple = DEFAULT_SUPPORT
    coefficients: tuple = DEFAULT_COEFFICIENTS
    samples: int = 200
    seed: int = 0
    variables: str = "x,y"

    def __post_init__(self):
        object.__setattr__(self, "support", tuple(tuple(int(e) for e in m) for m in self.support))
        object.__setattr__(self, "coefficients", tuple(int(c) for c in self.coefficients))
        n = len(VariableSet.of(self.variables))
        if self.samples < 1:
            raise InputError("sample count must be at least 1")
        if not self.support:
            raise InputError("empty support")
        if any(len(m) != n for m in self.support):
            raise InputError("support monomials do not match the variables")
        if any(sum(m) == 0 for m in self.support):
            raise InputError("support contains the constant monomial")
        if not self.coefficients or 0 in self.coefficients:
            raise InputError("coefficients must be a nonempty set of nonzero integers")

    def to_json(self) -> dict:
        return {
            "support": [list(m) for m in self.support],
            "coefficients": list(self.coefficients),
            "samples": self.samples,
            "variables": self.variables,
        }

    @classmethod
    def from_json(cls, data: dict, seed: int) -> "SearchConfig":
        return cls(tuple(tuple(m) for m in data["support"]), tuple(data["coefficients"]),
                   int(data["samples"]), seed, data.get("variables", "x,y"))


def _render(coeffs: Sequence[int], support: Sequence[tuple], variables: str) -> str:
    vs = VariableSet.of(variables)
    terms = {m: c for m, c in zip(support, coeffs)}
    return str(Polynomial(vs, terms))


def sample_polynomials(c: SearchConfig) -> Iterator[str]:
    """The sample texts, in order (sample k uses draws k*len(support) .. )."""
    rng = SplitMix64(c.seed)
    for _ in range(c.samples):
        coeffs = [rng.choice(c.coefficients) for _ in c.support]
        yield _render(coeffs, c.support, c.variables)


def _worker(args):
    return _evaluate(*args)


def _header(c: SearchConfig) -> dict:
    return {"schema_version": SCHEMA_VERSION, "config": c.to_json(), "seed": c.seed}


def _dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def _read_existing(path: Path, c: SearchConfig) -> tuple[list, int]:
    """Complete lines already in ``path`` and the byte length they occupy."""
    data = path.read_bytes()
    end = data.rfind(b"\n") + 1
    lines = data[:end].decode().splitlines()
    if not lines:
        return [], 0
    try:
        header = json.loads(lines[0])
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: corrupt header line") from exc
    if header != json.loads(_dumps(_header(c))):
        raise InputError(f"{path}: existing results were produced with a different configuration")
    entries = []
    for k, line in enumerate(lines[1:]):
        obj = json.loads(line)
        if obj.get("id") != k:
            raise InputError(f"{path}: line {k + 2} is out of sequence")
        entries.append(_entry_from_json(obj))
    return entries, end


def _entry_from_json(obj: dict, key_name: str = "id") -> ScanEntry:
    key = obj.get(key_name)
    if "error" in obj:
        return ScanEntry(key, obj.get("input", ""), error=obj["error"], kind=obj.get("kind"))
    record = {k: v for k, v in obj.items() if k != key_name}
    return ScanEntry(key, record.get("input", ""), record=record)


def search_support(c: SearchConfig, out: str | Path | None = None, *, workers: int = 1,
                   resume: bool = True) -> ScanResult:
    """Evaluate every sample of ``c``; optionally persist to a JSON Lines file.

    With ``resume`` an existing file for the same configuration is continued
    after its last complete line; a partial trailing line is discarded.
    """
    texts = list(sample_polynomials(c))
    entries: list = []
    fh = None
    if out is not None:
        path = Path(out)
        if resume and path.exists() and path.stat().st_size:
            entries, keep = _read_existing(path, c)
            with open(path, "r+b") as trunc:
                trunc.truncate(keep)
            fh = open(path, "a", encoding="utf-8")
            if keep == 0:
                fh.write(_dumps(_header(c)) + "\n")
        else:
            fh = open(path, "w", encoding="utf-8")
            fh.write(_dumps(_header(c)) + "\n")
    todo = [(k, texts[k], c.variables) for k in range(len(entries), len(texts))]
    try:
        if workers > 1 and len(todo) > 1:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                results = pool.map(_worker, todo, chunksize=4)
                for e in results:
                    _emit(e, entries, fh)
        else:
            for args in todo:
                _emit(_worker(args), entries, fh)
    finally:
        if fh is not None:
            fh.close()
    return ScanResult(tuple(entries), summarize(entries))


def _emit(entry: ScanEntry, entries: list, fh) -> None:
    entries.append(entry)
    if fh is not None:
        fh.write(_dumps(entry.to_json()) + "\n")
        fh.flush()
    _guard(entry)


def load_results(path: str | Path) -> tuple[SearchConfig, ScanResult]:
    """Read a results file and recompute its summary."""
    path = Path(path)
    lines = path.read_text().splitlines()
    if not lines:
        raise InputError(f"{path}: empty results file")
    header = json.loads(lines[0])
    c = SearchConfig.from_json(header["config"], header["seed"])
    entries = []
    for line in lines[1:]:
        try:
            entries.append(_entry_from_json(json.loads(line)))
        except json.JSONDecodeError:
            break
    return c, ScanResult(tuple(entries), summarize(entries))


# -- corpus verification ---------------------------------------------------------------


@dataclass(frozen=True)
class CorpusReport:
    items: tuple  # dicts: name, f, status, mismatches, failed_checks, error

    @property
    def ok(self) -> bool:
        return all(it["status"] == "pass" for it in self.items)

    def to_json(self) -> dict:
        return {"count": len(self.items), "ok": self.ok, "items": list(self.items)}


def verify_corpus(path: str | Path | None = None) -> CorpusReport:
    """Recompute every corpus item and compare with its reference values."""
    out = []
    for it in load_corpus(path):
        row = {"name": it.name, "f": it.f, "mismatches": [], "failed_checks": [],
               "error": None}
        try:
            rec = full_record(it.polynomial(), label=it.f)
        except InternalInvariantError:
            raise
        except (StepBoundExceeded,) as exc:
            raise InternalInvariantError(str(exc)) from exc
        except _SOFT_ERRORS as exc:
            row["error"] = str(exc)
            row["status"] = "fail"
            out.append(row)
            continue
        js = record_to_json(rec)
        for key in GOLDEN_FIELDS:
            if key in it.golden and js[key] != it.golden[key]:
                row["mismatches"].append({"field": key, "expected": it.golden[key],
                                          "computed": js[key]})
        row["failed_checks"] = [c.name for c in rec.checks if not c.ok]
        row["record"] = js
        row["status"] = "pass" if rec.complete and not row["mismatches"] and not row["failed_checks"] else "fail"
        out.append(row)
    return CorpusReport(tuple(out))
