"""Universal Witt addition and multiplication polynomials.

S_i and P_i are obtained from the ghost components
w_i(X) = sum_{j<=i} p^j X_j^(p^(i-j)) by solving

    w_i(S_0, ..., S_i) = w_i(X) + w_i(Y),   w_i(P_0, ..., P_i) = w_i(X) * w_i(Y)

for the top coordinate.  Coefficients are exact rationals; every one of them
must come out integral, otherwise construction aborts.
"""
from __future__ import annotations

import hashlib
import os
import tempfile
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Mapping, Sequence

from .perfect_algebra import AlgebraDescriptor, AlgebraElement
from .witt_vector import WittVector

FORMAT_VERSION = 1

# largest level generated by default, per prime
DEFAULT_BOUNDS: dict[int, int] = {2: 4, 3: 4, 5: 3, 7: 2}


class WittBoundsError(ValueError):
    """Requested (p, n) lies outside the configured generation bounds."""


class IntegralityError(ArithmeticError):
    """A Witt polynomial coefficient is not an integer (engine bug)."""


class PolyFormatError(ValueError):
    pass


Monomial = tuple[int, ...]


def _norm(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


class SparsePolynomial:
    """Polynomial in ``nvars`` variables with int / Fraction coefficients."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[Monomial, int | Fraction] | None = None):
        self.nvars = nvars
        self.terms: dict[Monomial, int | Fraction] = {}
        if terms:
            for m, c in terms.items():
                if len(m) != nvars:
                    raise ValueError(f"monomial {m} does not have {nvars} exponents")
                c = _norm(c)
                if c:
                    self.terms[tuple(m)] = c

    @classmethod
    def constant(cls, nvars: int, c) -> "SparsePolynomial":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def variable(cls, nvars: int, i: int) -> "SparsePolynomial":
        m = [0] * nvars
        m[i] = 1
        return cls(nvars, {tuple(m): 1})

    def _new(self, terms: dict) -> "SparsePolynomial":
        out = SparsePolynomial.__new__(SparsePolynomial)
        out.nvars = self.nvars
        out.terms = terms
        return out

    def __add__(self, other: "SparsePolynomial") -> "SparsePolynomial":
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = _norm(out.get(m, 0) + c)
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return self._new(out)

    def __neg__(self) -> "SparsePolynomial":
        return self._new({m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "SparsePolynomial") -> "SparsePolynomial":
        return self + (-other)

    def scale(self, k) -> "SparsePolynomial":
        if not k:
            return self._new({})
        return self._new({m: _norm(k * c) for m, c in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, SparsePolynomial):
            return self.scale(other)
        out: dict[Monomial, int | Fraction] = {}
        get = out.get
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                out[m] = get(m, 0) + c1 * c2
        return self._new({m: _norm(c) for m, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "SparsePolynomial":
        result = SparsePolynomial.constant(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if not isinstance(other, SparsePolynomial):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __len__(self):
        return len(self.terms)

    def is_integral(self) -> bool:
        return all(isinstance(c, int) for c in self.terms.values())

    def degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def sorted_terms(self) -> list[tuple[Monomial, int | Fraction]]:
        """Ascending total degree, then descending exponent vector."""
        return sorted(self.terms.items(), key=lambda t: (sum(t[0]), tuple(-e for e in t[0])))

    def __repr__(self):
        return f"SparsePolynomial({self.nvars} vars, {len(self.terms)} terms)"


def variable_names(n: int) -> list[str]:
    return [f"x{i}" for i in range(n)] + [f"y{i}" for i in range(n)]


def ghost(i: int, vars: Sequence[SparsePolynomial], p: int) -> SparsePolynomial:
    """w_i(V) = sum_{j<=i} p^j V_j^(p^(i-j))."""
    if i < 0:
        raise ValueError("ghost index must be >= 0")
    total = SparsePolynomial(vars[0].nvars)
    for j in range(i + 1):
        total = total + (vars[j] ** (p ** (i - j))).scale(p ** j)
    return total


@dataclass
class WittPolynomialSet:
    p: int
    n: int
    S: list[SparsePolynomial]
    P: list[SparsePolynomial]
    _compiled: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def nvars(self) -> int:
        return 2 * self.n

    def x_vars(self) -> list[SparsePolynomial]:
        return [SparsePolynomial.variable(self.nvars, i) for i in range(self.n)]

    def y_vars(self) -> list[SparsePolynomial]:
        return [SparsePolynomial.variable(self.nvars, self.n + i) for i in range(self.n)]

    def check_integrality(self) -> None:
        for name, polys in (("S", self.S), ("P", self.P)):
            for i, poly in enumerate(polys):
                if not poly.is_integral():
                    bad = next(c for c in poly.terms.values() if not isinstance(c, int))
                    raise IntegralityError(f"{name}_{i} has non-integral coefficient {bad}")

    def check_ghost_identities(self) -> list[str]:
        """Names of the identities that fail (empty when all hold)."""
        X, Y = self.x_vars(), self.y_vars()
        failures = []
        for i in range(self.n):
            wx, wy = ghost(i, X, self.p), ghost(i, Y, self.p)
            if ghost(i, self.S, self.p) != wx + wy:
                failures.append(f"w_{i}(S) = w_{i}(X) + w_{i}(Y)")
            if ghost(i, self.P, self.p) != wx * wy:
                failures.append(f"w_{i}(P) = w_{i}(X) * w_{i}(Y)")
        return failures


def check_bounds(p: int, n: int, bounds: Mapping[int, int] | None = None) -> None:
    bounds = DEFAULT_BOUNDS if bounds is None else bounds
    if n < 1:
        raise WittBoundsError(f"level must be >= 1, got {n}")
    limit = bounds.get(p)
    if limit is None or n > limit:
        allowed = ", ".join(f"p={q}: n<={m}" for q, m in sorted(bounds.items()))
        raise WittBoundsError(f"(p={p}, n={n}) outside generation bounds ({allowed})")


def _solve_top(target: SparsePolynomial, lower: list[SparsePolynomial], p: int,
               i: int, name: str) -> SparsePolynomial:
    acc = target
    for j, q in enumerate(lower):
        acc = acc - (q ** (p ** (i - j))).scale(p ** j)
    denom = p ** i
    out = {}
    for m, c in acc.terms.items():
        v = _norm(Fraction(c) / denom)
        if not isinstance(v, int):
            raise IntegralityError(f"{name}_{i}: coefficient {v} at {m} is not integral")
        out[m] = v
    return SparsePolynomial(target.nvars, out)


def build_witt_polynomials(p: int, n: int, bounds: Mapping[int, int] | None = None) -> WittPolynomialSet:
    check_bounds(p, n, bounds)
    nv = 2 * n
    X = [SparsePolynomial.variable(nv, i) for i in range(n)]
    Y = [SparsePolynomial.variable(nv, n + i) for i in range(n)]
    S: list[SparsePolynomial] = []
    P: list[SparsePolynomial] = []
    for i in range(n):
        wx, wy = ghost(i, X, p), ghost(i, Y, p)
        S.append(_solve_top(wx + wy, S, p, i, "S"))
        P.append(_solve_top(wx * wy, P, p, i, "P"))
    return WittPolynomialSet(p, n, S, P)


# -- evaluation ---------------------------------------------------------------

def evaluate_mod_p(poly: SparsePolynomial, assignment: Sequence[AlgebraElement]) -> AlgebraElement:
    """Reduce coefficients mod p and evaluate at elements of R."""
    if len(assignment) != poly.nvars:
        raise ValueError(f"need {poly.nvars} values, got {len(assignment)}")
    alg = assignment[0].descriptor
    p = alg.p
    if not poly.is_integral():
        raise IntegralityError("cannot reduce a non-integral polynomial mod p")
    powers: list[dict[int, AlgebraElement]] = [{} for _ in assignment]
    acc = alg.zero
    for m, c in poly.terms.items():
        c %= p
        if not c:
            continue
        term = alg.from_int(c)
        for v, e in enumerate(m):
            if e:
                pw = powers[v].get(e)
                if pw is None:
                    pw = powers[v][e] = assignment[v] ** e
                term = term * pw
        acc = acc + term
    return acc


def _eval_prime_field(compiled, values: Sequence[int], p: int) -> int:
    total = 0
    for c, m in compiled:
        t = c
        for v, e in m:
            t = t * pow(values[v], e, p) % p
        total += t
    return total % p


def _backend(op: str, w1: WittVector, w2: WittVector, polys: WittPolynomialSet) -> WittVector:
    if w1.n != w2.n or w1.algebra != w2.algebra:
        raise ValueError("Witt vectors from different rings")
    if polys.p != w1.p or polys.n < w1.n:
        raise WittBoundsError(f"polynomial set (p={polys.p}, n={polys.n}) cannot serve "
                              f"W_{w1.n} over p={w1.p}")
    N = polys.n
    alg = w1.algebra
    zeros = [alg.zero] * (N - w1.n)
    assignment = list(w1.components) + zeros + list(w2.components) + zeros
    family = polys.S if op == "add" else polys.P
    if alg.is_field and alg.is_prime_field:
        p = alg.p
        key = op
        compiled = polys._compiled.get(key)
        if compiled is None:
            compiled = polys._compiled[key] = [
                [(c % p, tuple((v, e) for v, e in enumerate(m) if e))
                 for m, c in poly.terms.items() if c % p]
                for poly in family]
        values = [a.coeffs[0][0] for a in assignment]
        comps = [alg.from_int(_eval_prime_field(compiled[i], values, p)) for i in range(w1.n)]
    else:
        comps = [evaluate_mod_p(family[i], assignment) for i in range(w1.n)]
    return WittVector(alg, tuple(comps))


def poly_backend_add(w1: WittVector, w2: WittVector, polys: WittPolynomialSet) -> WittVector:
    return _backend("add", w1, w2, polys)


def poly_backend_mul(w1: WittVector, w2: WittVector, polys: WittPolynomialSet) -> WittVector:
    return _backend("mul", w1, w2, polys)


# -- exchange format ----------------------------------------------------------

def _format_coeff(c) -> str:
    if isinstance(c, Fraction):
        return f"{c.numerator}/{c.denominator}"
    return str(c)


def format_polynomial(poly: SparsePolynomial, names: Sequence[str]) -> str:
    parts = []
    for m, c in poly.sorted_terms():
        mono = " ".join(names[v] if e == 1 else f"{names[v]}^{e}"
                        for v, e in enumerate(m) if e)
        parts.append(f"{_format_coeff(c)} {mono}" if mono else _format_coeff(c))
    return " ; ".join(parts)


def dumps(polys: WittPolynomialSet) -> str:
    names = variable_names(polys.n)
    lines = [f"witt-poly v{FORMAT_VERSION} p={polys.p} n={polys.n}"]
    for name, family in (("S", polys.S), ("P", polys.P)):
        for i, poly in enumerate(family):
            body = format_polynomial(poly, names)
            lines.append(f"{name} {i}: {body}" if body else f"{name} {i}:")
    return "\n".join(lines) + "\n"


def _parse_polynomial(body: str, names: Sequence[str], lineno: int) -> SparsePolynomial:
    index = {nm: i for i, nm in enumerate(names)}
    terms: dict[Monomial, int | Fraction] = {}
    body = body.strip()
    if not body:
        return SparsePolynomial(len(names))
    for chunk in body.split(";"):
        tokens = chunk.split()
        if not tokens:
            raise PolyFormatError(f"line {lineno}: empty term")
        try:
            coeff = _norm(Fraction(tokens[0]))
        except ValueError as exc:
            raise PolyFormatError(f"line {lineno}: bad coefficient {tokens[0]!r}") from exc
        m = [0] * len(names)
        for tok in tokens[1:]:
            var, _, exp = tok.partition("^")
            if var not in index:
                raise PolyFormatError(f"line {lineno}: unknown variable {var!r}")
            m[index[var]] += int(exp) if exp else 1
        m = tuple(m)
        if m in terms:
            raise PolyFormatError(f"line {lineno}: repeated monomial {chunk.strip()!r}")
        terms[m] = coeff
    return SparsePolynomial(len(names), terms)


def loads(text: str) -> WittPolynomialSet:
    lines = text.splitlines()
    if not lines:
        raise PolyFormatError("empty input")
    head = lines[0].split()
    if len(head) != 4 or head[0] != "witt-poly" or head[1] != f"v{FORMAT_VERSION}":
        raise PolyFormatError(f"bad header {lines[0]!r}")
    try:
        p = int(head[2].removeprefix("p="))
        n = int(head[3].removeprefix("n="))
    except ValueError as exc:
        raise PolyFormatError(f"bad header {lines[0]!r}") from exc
    names = variable_names(n)
    found: dict[tuple[str, int], SparsePolynomial] = {}
    for lineno, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        label, sep, body = line.partition(":")
        parts = label.split()
        if not sep or len(parts) != 2 or parts[0] not in ("S", "P"):
            raise PolyFormatError(f"line {lineno}: expected 'S <i>:' or 'P <i>:'")
        found[(parts[0], int(parts[1]))] = _parse_polynomial(body, names, lineno)
    try:
        S = [found[("S", i)] for i in range(n)]
        P = [found[("P", i)] for i in range(n)]
    except KeyError as exc:
        raise PolyFormatError(f"missing polynomial {exc.args[0]}") from exc
    return WittPolynomialSet(p, n, S, P)


# -- disk cache ---------------------------------------------------------------

def cache_key(p: int, n: int) -> str:
    return hashlib.sha256(f"witt-poly v{FORMAT_VERSION} p={p} n={n}".encode()).hexdigest()[:24]


def cache_path(cache_dir: str | os.PathLike, p: int, n: int) -> Path:
    return Path(cache_dir) / f"{cache_key(p, n)}.wpoly"


def load_or_build(p: int, n: int, cache_dir: str | os.PathLike | None = None,
                  bounds: Mapping[int, int] | None = None) -> WittPolynomialSet:
    """Polynomial set for (p, n), read from / written to ``cache_dir`` if given."""
    check_bounds(p, n, bounds)
    if cache_dir is None:
        return build_witt_polynomials(p, n, bounds)
    path = cache_path(cache_dir, p, n)
    if path.exists():
        polys = loads(path.read_text())
        if polys.p == p and polys.n == n:
            polys.check_integrality()
            return polys
    polys = build_witt_polynomials(p, n, bounds)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, suffix=".tmp")
    with os.fdopen(fd, "w") as fh:
        fh.write(dumps(polys))
    os.replace(tmp, path)
    return polys


_MEMO: dict[tuple[int, int], WittPolynomialSet] = {}


def get_witt_polynomials(p: int, n: int, cache_dir: str | os.PathLike | None = None) -> WittPolynomialSet:
    """In-process memoised ``load_or_build``."""
    key = (p, n)
    if key not in _MEMO:
        _MEMO[key] = load_or_build(p, n, cache_dir)
    return _MEMO[key]
