"""Text syntax for algebra elements, ZR elements, Witt vectors and descriptors.

Grammar (whitespace is insignificant)::

    element    := [sign] term (sign term)*
    term       := [integer '*'] '[' field_elem ']' | integer
    field_elem := integer                     (prime field, or constant)
                | '[' integer (',' integer)* ']'   (extension, c0 first)
                | '(' field_elem (';' field_elem)* ')' (product factors)
    witt       := '(' field_elem (',' field_elem)* ')'
    factor     := 'p=' int [',e=' int] [',mod=' '[' int (',' int)* ']']
    descriptor := factor (' x ' factor)*

A bare integer k in ``element`` stands for k*[1].
"""
from __future__ import annotations

import re

from .monoid_algebra import MonoidAlgebraElement
from .perfect_algebra import AlgebraDescriptor, AlgebraElement, AlgebraError, FieldFactor
from .witt_vector import WittVector


class ParseError(ValueError):
    """Syntax or range error; ``offset`` is the byte offset of the problem."""

    def __init__(self, message: str, src: str, pos: int):
        self.offset = len(src[:pos].encode("utf-8"))
        self.message = message
        super().__init__(f"{message} at offset {self.offset}")


class _Parser:
    def __init__(self, src: str, algebra: AlgebraDescriptor | None):
        self.src = src
        self.pos = 0
        self.algebra = algebra

    def error(self, msg: str, pos: int | None = None):
        raise ParseError(msg, self.src, self.pos if pos is None else pos)

    def skip_ws(self):
        while self.pos < len(self.src) and self.src[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.src[self.pos] if self.pos < len(self.src) else ""

    def expect(self, ch: str):
        if self.peek() != ch:
            found = repr(self.src[self.pos]) if self.pos < len(self.src) else "end of input"
            self.error(f"expected {ch!r}, found {found}")
        self.pos += 1

    def at_end(self) -> bool:
        return self.peek() == ""

    def integer(self, signed: bool = False) -> int:
        self.skip_ws()
        start = self.pos
        if signed and self.pos < len(self.src) and self.src[self.pos] in "+-":
            self.pos += 1
        digits = self.pos
        while self.pos < len(self.src) and self.src[self.pos].isdigit():
            self.pos += 1
        if self.pos == digits:
            self.error("expected integer")
        return int(self.src[start:self.pos])

    # -- field elements ----------------------------------------------------

    def field_elem(self) -> AlgebraElement:
        alg = self.algebra
        start = self.pos
        if alg.is_field:
            vec = self._factor_value(alg.factors[0])
            return AlgebraElement(alg, (vec,))
        if self.peek() != "(":
            self.error(f"product element needs {len(alg.factors)} factors in '(...; ...)'")
        self.pos += 1
        vecs = []
        for i, f in enumerate(alg.factors):
            if i:
                if self.peek() != ";":
                    self.error(f"descriptor mismatch: expected {len(alg.factors)} factors", start)
                self.pos += 1
            vecs.append(self._factor_value(f))
        if self.peek() != ")":
            self.error(f"descriptor mismatch: expected {len(alg.factors)} factors", start)
        self.pos += 1
        return AlgebraElement(alg, tuple(vecs))

    def _factor_value(self, f: FieldFactor) -> tuple[int, ...]:
        start = (self.skip_ws(), self.pos)[1]
        if self.peek() == "[":
            self.pos += 1
            vals = [self._coeff(f.p)]
            while self.peek() == ",":
                self.pos += 1
                vals.append(self._coeff(f.p))
            self.expect("]")
            if len(vals) != f.e:
                self.error(f"descriptor mismatch: expected {f.e} coefficients, got {len(vals)}", start)
            return tuple(vals)
        return (self._coeff(f.p),) + (0,) * (f.e - 1)

    def _coeff(self, p: int) -> int:
        self.skip_ws()
        start = self.pos
        v = self.integer()
        if not 0 <= v < p:
            self.error(f"field element {v} out of range [0, {p})", start)
        return v

    # -- ZR elements ---------------------------------------------------------

    def element(self) -> MonoidAlgebraElement:
        alg = self.algebra
        terms: dict[AlgebraElement, int] = {}
        sign = 1
        if self.peek() in "+-" and self.peek():
            sign = -1 if self.src[self.pos] == "-" else 1
            self.pos += 1
        while True:
            k, r = self.term()
            terms[r] = terms.get(r, 0) + sign * k
            c = self.peek()
            if c in ("+", "-") and c:
                sign = -1 if c == "-" else 1
                self.pos += 1
                continue
            break
        if not self.at_end():
            self.error(f"unexpected {self.src[self.pos]!r}")
        return MonoidAlgebraElement(alg, terms)

    def term(self) -> tuple[int, AlgebraElement]:
        c = self.peek()
        if c == "[":
            self.pos += 1
            r = self.field_elem()
            self.expect("]")
            return 1, r
        if not c.isdigit():
            self.error("expected term" if c else "expected term, found end of input")
        k = self.integer()
        if self.peek() == "*":
            self.pos += 1
            self.expect("[")
            r = self.field_elem()
            self.expect("]")
            return k, r
        return k, self.algebra.one

    def witt(self) -> WittVector:
        self.expect("(")
        comps = [self.field_elem()]
        while self.peek() == ",":
            self.pos += 1
            comps.append(self.field_elem())
        self.expect(")")
        if not self.at_end():
            self.error(f"unexpected {self.src[self.pos]!r}")
        return WittVector(self.algebra, tuple(comps))


def parse_field_element(src: str, algebra: AlgebraDescriptor) -> AlgebraElement:
    ps = _Parser(src, algebra)
    r = ps.field_elem()
    if not ps.at_end():
        ps.error(f"unexpected {src[ps.pos]!r}")
    return r


def parse_element(src: str, algebra: AlgebraDescriptor) -> MonoidAlgebraElement:
    """Parse a ZR expression such as ``3*[1] - [0]``."""
    return _Parser(src, algebra).element()


def parse_witt_vector(src: str, algebra: AlgebraDescriptor) -> WittVector:
    return _Parser(src, algebra).witt()


def parse_factor_spec(src: str, p: int | None = None) -> tuple[int, FieldFactor]:
    """``p=5,e=2,mod=[2,0,1]`` (p may be omitted when given separately)."""
    fields: dict[str, str] = {}
    depth = 0
    key_start = 0
    parts = []
    for i, ch in enumerate(src):
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
        elif ch == "," and depth == 0:
            parts.append((key_start, src[key_start:i]))
            key_start = i + 1
    parts.append((key_start, src[key_start:]))
    for pos, part in parts:
        if "=" not in part:
            raise ParseError(f"expected key=value, got {part.strip()!r}", src, pos)
        key, val = part.split("=", 1)
        key = key.strip()
        if key not in ("p", "e", "mod"):
            raise ParseError(f"unknown key {key!r}", src, pos)
        if key in fields:
            raise ParseError(f"repeated key {key!r}", src, pos)
        fields[key] = val.strip()
    try:
        if "p" in fields:
            fp = int(fields["p"])
            if p is not None and fp != p:
                raise AlgebraError(f"factor characteristic {fp} differs from p = {p}")
            p = fp
        if p is None:
            raise AlgebraError("characteristic p not given")
        e = int(fields.get("e", "1"))
        mod = None
        if "mod" in fields:
            m = fields["mod"]
            if not (m.startswith("[") and m.endswith("]")):
                raise ParseError("modulus must be a list '[c0,c1,...]'", src, src.find(m))
            mod = [int(v) for v in m[1:-1].split(",")]
            if "e" not in fields:
                e = len(mod) - 1
    except ValueError as exc:
        if isinstance(exc, (ParseError, AlgebraError)):
            raise
        raise ParseError(f"bad integer in {src!r}", src, 0) from exc
    return p, FieldFactor.make(p, e, mod)


def parse_descriptor(src: str) -> AlgebraDescriptor:
    """One factor spec, or several joined by `` x `` as ``format_descriptor`` writes them."""
    p = None
    factors = []
    for spec in re.split(r"\s+x\s+", src.strip()):
        p, factor = parse_factor_spec(spec, p)
        factors.append(factor)
    return AlgebraDescriptor(p, tuple(factors))


# -- printing -------------------------------------------------------------------

def _format_factor(f: FieldFactor, vec: tuple[int, ...]) -> str:
    if f.e == 1:
        return str(vec[0])
    return "[" + ",".join(str(c) for c in vec) + "]"


def format_field_element(r: AlgebraElement) -> str:
    alg = r.descriptor
    parts = [_format_factor(f, v) for f, v in zip(alg.factors, r.coeffs)]
    if alg.is_field:
        return parts[0]
    return "(" + "; ".join(parts) + ")"


def format_element(x: MonoidAlgebraElement) -> str:
    """``k*[r]`` terms in canonical support order; ``0`` for the empty sum."""
    items = x.items()
    if not items:
        return "0"
    out = []
    for i, (r, c) in enumerate(items):
        body = f"{abs(c)}*[{format_field_element(r)}]"
        if i == 0:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append(("- " if c < 0 else "+ ") + body)
    return " ".join(out)


def format_witt_vector(w: WittVector) -> str:
    return "(" + ", ".join(format_field_element(c) for c in w.components) + ")"


def format_descriptor(alg: AlgebraDescriptor) -> str:
    specs = []
    for f in alg.factors:
        specs.append(f"p={f.p},e={f.e},mod=[{','.join(map(str, f.modulus))}]")
    return " x ".join(specs)
