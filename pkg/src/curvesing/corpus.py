"""The bundled corpus of plane curve germs with reference values.

Each item names a polynomial and its known ``mu``, ``tau``, ``r``, ``m``,
``delta`` and whether it is quasihomogeneous.  The values are classical
(simple and unimodal singularities) or come from closed formulas for the
two parametrized families.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .errors import InputError
from .polyring import Polynomial

__all__ = ["CorpusItem", "load_corpus", "bundled_corpus_text", "GOLDEN_FIELDS"]

GOLDEN_FIELDS = ("mu", "tau", "r", "m", "delta", "quasihomogeneous")


@dataclass(frozen=True)
class CorpusItem:
    name: str
    f: str
    variables: str
    golden: dict
    family: str | None = None

    def polynomial(self) -> Polynomial:
        return Polynomial.parse(self.f, self.variables)


def bundled_corpus_text() -> str:
    return resources.files("curvesing").joinpath("data/corpus.json").read_text()


def _parse(data, origin: str) -> list:
    if not isinstance(data, dict) or not isinstance(data.get("items"), list):
        raise InputError(f"{origin}: expected an object with an 'items' list")
    variables = data.get("variables", "x,y")
    out = []
    for k, it in enumerate(data["items"]):
        if not isinstance(it, dict) or "f" not in it:
            raise InputError(f"{origin}: item {k} has no polynomial 'f'")
        golden = {key: it[key] for key in GOLDEN_FIELDS if key in it}
        out.append(CorpusItem(
            name=str(it.get("name", f"item {k}")),
            f=str(it["f"]),
            variables=str(it.get("variables", variables)),
            golden=golden,
            family=it.get("family"),
        ))
    return out


def load_corpus(path: str | Path | None = None) -> list:
    """Items from a corpus JSON file, or the bundled corpus when ``path`` is None."""
    if path is None:
        return _parse(json.loads(bundled_corpus_text()), "bundled corpus")
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read corpus file {path}: {exc.strerror}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from exc
    return _parse(data, str(path))
