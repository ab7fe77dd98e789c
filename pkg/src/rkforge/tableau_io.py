"""Plain-text tableau files.

Layout (fields in this order; ``name``, ``orders`` and ``params`` are optional)::

    # comment
    name: table46
    orders: 4 6
    params: <11 numbers>
    s: 9
    u: 9                # or "none"
    c: <s numbers>
    A:
      <s numbers>       # s rows
    b: <s numbers>
    B: <k>
      <s numbers>       # k rows
    d: <m>
      <s numbers>       # m rows

Numbers are decimals with 17 significant digits or exact ``p/q`` rationals.
Rationals are written whenever the pair carries exact coefficients.
"""
from __future__ import annotations

from fractions import Fraction
from pathlib import Path

import numpy as np

from .errors import TableauFormatError
from .tableau import ButcherTableau, ContinuousPair, FamilyParams, Interpolant

_OPTIONAL = ("name", "orders", "params")


def _fmt(v) -> str:
    if isinstance(v, Fraction):
        return str(v)
    return format(float(v), ".17g")


def _row(values) -> str:
    return " ".join(_fmt(v) for v in values)


def dumps(pair: ContinuousPair) -> str:
    tab = pair.tableau
    exact = tab.exact or {}
    lines = ["# rkforge tableau"]
    if pair.name:
        lines.append(f"name: {pair.name}")
    lines.append(f"orders: {pair.orders[0]} {pair.orders[1]}")
    if pair.params is not None:
        vals = [getattr(pair.params, n) for n in FamilyParams.names]
        lines.append("params: " + _row(v if isinstance(v, Fraction) else float(v) for v in vals))
    lines.append(f"s: {tab.s}")
    lines.append(f"u: {tab.u if tab.u is not None else 'none'}")
    lines.append("c: " + _row(exact.get("c", tab.c)))
    lines.append("A:")
    A = exact.get("A", tab.A)
    lines.extend("  " + _row(r) for r in A)
    lines.append("b: " + _row(exact.get("b", tab.b)))
    B = exact.get("B") or ([] if pair.interpolant is None else pair.interpolant.B)
    lines.append(f"B: {len(B)}")
    lines.extend("  " + _row(r) for r in B)
    D = exact.get("d") or pair.d_basis
    lines.append(f"d: {len(D)}")
    lines.extend("  " + _row(r) for r in D)
    return "\n".join(lines) + "\n"


def _number(tok: str, lineno: int):
    try:
        if "/" in tok or tok.lstrip("+-").isdigit():
            return Fraction(tok)
        return float(tok)
    except (ValueError, ZeroDivisionError) as exc:
        raise TableauFormatError(f"line {lineno}: bad number {tok!r}") from exc


class _Lines:
    def __init__(self, text: str):
        self.items = []
        for k, raw in enumerate(text.splitlines(), 1):
            line = raw.split("#", 1)[0].strip()
            if line:
                self.items.append((k, line))
        self.pos = 0

    def peek_key(self):
        if self.pos >= len(self.items):
            return None
        _, line = self.items[self.pos]
        return line.split(":", 1)[0].strip() if ":" in line else None

    def field(self, key: str) -> tuple[int, str]:
        if self.pos >= len(self.items):
            raise TableauFormatError(f"missing field {key!r}")
        lineno, line = self.items[self.pos]
        head, _, rest = line.partition(":")
        if head.strip() != key or not _:
            raise TableauFormatError(f"line {lineno}: expected field {key!r}, found {line!r}")
        self.pos += 1
        return lineno, rest.strip()

    def rows(self, count: int, width: int, key: str):
        out = []
        for _ in range(count):
            if self.pos >= len(self.items):
                raise TableauFormatError(f"field {key!r}: expected {count} rows")
            lineno, line = self.items[self.pos]
            out.append(_vector(line, width, lineno, key))
            self.pos += 1
        return out


def _vector(text: str, width: int, lineno: int, key: str):
    toks = text.split()
    if len(toks) != width:
        raise TableauFormatError(f"line {lineno}: field {key!r} needs {width} numbers, got {len(toks)}")
    return [_number(t, lineno) for t in toks]


def _count(text: str, lineno: int, key: str) -> int:
    try:
        n = int(text)
    except ValueError as exc:
        raise TableauFormatError(f"line {lineno}: field {key!r} needs an integer") from exc
    if n < 0:
        raise TableauFormatError(f"line {lineno}: negative count for {key!r}")
    return n


def _floats(rows):
    return np.array([[float(v) for v in r] for r in rows], dtype=float)


def _all_exact(rows) -> bool:
    return all(isinstance(v, Fraction) for r in rows for v in r)


def loads(text: str) -> ContinuousPair:
    """Parse a tableau file; raises ``TableauFormatError`` on malformed input."""
    L = _Lines(text)
    meta = {}
    for key in _OPTIONAL:
        if L.peek_key() == key:
            lineno, val = L.field(key)
            meta[key] = (lineno, val)
    lineno, val = L.field("s")
    s = _count(val, lineno, "s")
    if s < 1:
        raise TableauFormatError(f"line {lineno}: stage count must be positive")
    lineno, val = L.field("u")
    u = None if val.lower() == "none" else _count(val, lineno, "u")
    lineno, val = L.field("c")
    c = _vector(val, s, lineno, "c")
    L.field("A")
    A = L.rows(s, s, "A")
    lineno, val = L.field("b")
    b = _vector(val, s, lineno, "b")
    lineno, val = L.field("B")
    B = L.rows(_count(val, lineno, "B"), s, "B")
    lineno, val = L.field("d")
    D = L.rows(_count(val, lineno, "d"), s, "d")
    if L.pos != len(L.items):
        lineno, line = L.items[L.pos]
        raise TableauFormatError(f"line {lineno}: unexpected content {line!r}")

    exact = {}
    for key, rows in (("A", A), ("B", B), ("d", D)):
        if rows and _all_exact(rows):
            exact[key] = rows
    for key, vec in (("b", b), ("c", c)):
        if _all_exact([vec]):
            exact[key] = vec
    try:
        tab = ButcherTableau(_floats(A), _floats([b])[0], _floats([c])[0], u, exact=exact or None)
        interp = Interpolant(_floats(B)) if B else None
        pair_D = _floats(D) if D else np.zeros((0, s))
    except ValueError as exc:
        raise TableauFormatError(f"invalid tableau: {exc}") from exc

    name = meta.get("name", (0, ""))[1]
    orders = (4, 5)
    if "orders" in meta:
        lineno, val = meta["orders"]
        parts = val.split()
        if len(parts) != 2:
            raise TableauFormatError(f"line {lineno}: orders needs two integers")
        orders = (_count(parts[0], lineno, "orders"), _count(parts[1], lineno, "orders"))
    params = None
    if "params" in meta:
        lineno, val = meta["params"]
        params = FamilyParams.from_array(_vector(val, 11, lineno, "params"))
    return ContinuousPair(tab, interp, pair_D, orders, name=name, params=params)


def write(pair: ContinuousPair, path) -> None:
    Path(path).write_text(dumps(pair))


def read(path) -> ContinuousPair:
    return loads(Path(path).read_text())
