"""Parsing and emission of family files.

Two formats round-trip bit-exactly:

- text: optional ``#`` comment lines, a mandatory ``n=<int>`` header, then
  one set per line as comma-separated ascending elements, with the single
  token ``-`` denoting the empty set;
- json: one object ``{"n": <int>, "sets": [[...], ...]}`` with the empty set
  as ``[]``.

Documents carry sets as a sparse ordered mask list and accept any ground
size up to 63; only the dense Family construction enforces the 2^n cap.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Sequence

from .families import DENSE_CAP, Family, elements_of

SPARSE_CAP = 63

TEXT_FORMAT = "text"
JSON_FORMAT = "json"


class FamilyParseError(ValueError):
    """Malformed family input; the message carries the offending position."""


@dataclass(frozen=True)
class FamilyDocument:
    n: int
    masks: tuple[int, ...]
    fmt: str = TEXT_FORMAT

    def to_family(self, *, dense_cap: int = DENSE_CAP) -> Family:
        return Family(self.n, self.masks, dense_cap=dense_cap)


def document_from_family(fam: Family, fmt: str = TEXT_FORMAT) -> FamilyDocument:
    return FamilyDocument(n=fam.n, masks=tuple(int(m) for m in fam.masks), fmt=fmt)


def _check_ground(n: int, where: str) -> None:
    if not isinstance(n, int) or isinstance(n, bool) or not 1 <= n <= SPARSE_CAP:
        raise FamilyParseError(f"{where}: ground size must be an integer in 1..{SPARSE_CAP}")


def _mask_from_elements(elements: Sequence[int], n: int, where: str) -> int:
    mask = 0
    previous = 0
    for e in elements:
        if not isinstance(e, int) or isinstance(e, bool):
            raise FamilyParseError(f"{where}: element {e!r} is not an integer")
        if e < 1 or e > n:
            raise FamilyParseError(f"{where}: element {e} out of range 1..{n}")
        if e <= previous:
            raise FamilyParseError(f"{where}: elements must be strictly ascending")
        previous = e
        mask |= 1 << (e - 1)
    return mask


def parse_family_text(text: str) -> FamilyDocument:
    n = None
    masks: list[int] = []
    seen: set[int] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        where = f"line {lineno}"
        if n is None:
            if not line.startswith("n="):
                raise FamilyParseError(f"{where}: expected header 'n=<int>' before any set")
            try:
                n = int(line[2:].strip())
            except ValueError:
                raise FamilyParseError(f"{where}: malformed header {line!r}") from None
            _check_ground(n, where)
            continue
        if line == "-":
            mask = 0
        else:
            try:
                elements = [int(tok.strip()) for tok in line.split(",")]
            except ValueError:
                raise FamilyParseError(f"{where}: malformed set line {line!r}") from None
            mask = _mask_from_elements(elements, n, where)
        if mask in seen:
            raise FamilyParseError(f"{where}: duplicate set {line!r}")
        seen.add(mask)
        masks.append(mask)
    if n is None:
        raise FamilyParseError("missing header 'n=<int>'")
    return FamilyDocument(n=n, masks=tuple(masks), fmt=TEXT_FORMAT)


def parse_family_json(text: str) -> FamilyDocument:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FamilyParseError(f"invalid json: {exc}") from None
    if not isinstance(obj, dict) or set(obj) != {"n", "sets"}:
        raise FamilyParseError("expected an object with exactly the keys 'n' and 'sets'")
    n = obj["n"]
    _check_ground(n, "key 'n'")
    sets = obj["sets"]
    if not isinstance(sets, list):
        raise FamilyParseError("key 'sets': expected a list of element lists")
    masks: list[int] = []
    seen: set[int] = set()
    for index, elements in enumerate(sets):
        where = f"sets[{index}]"
        if not isinstance(elements, list):
            raise FamilyParseError(f"{where}: expected a list of elements")
        mask = _mask_from_elements(elements, n, where)
        if mask in seen:
            raise FamilyParseError(f"{where}: duplicate set")
        seen.add(mask)
        masks.append(mask)
    return FamilyDocument(n=n, masks=tuple(masks), fmt=JSON_FORMAT)


def parse_family(text: str) -> FamilyDocument:
    """Parse either format, sniffed from the first non-space character."""
    stripped = text.lstrip()
    if stripped.startswith("{"):
        return parse_family_json(text)
    return parse_family_text(text)


def emit_family_text(doc: FamilyDocument) -> str:
    lines = [f"n={doc.n}"]
    for mask in doc.masks:
        els = elements_of(mask)
        lines.append(",".join(map(str, els)) if els else "-")
    return "\n".join(lines) + "\n"


def emit_family_json(doc: FamilyDocument) -> str:
    payload = {"n": doc.n, "sets": [list(elements_of(m)) for m in doc.masks]}
    return json.dumps(payload, sort_keys=True) + "\n"


def emit_family(doc: FamilyDocument) -> str:
    if doc.fmt == JSON_FORMAT:
        return emit_family_json(doc)
    return emit_family_text(doc)
