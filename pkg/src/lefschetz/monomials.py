"""Monomials, homogeneous polynomials and standard monomial bases of R/I.

Monomials are exponent tuples in ``r`` variables.  Within one degree the
graded-lex order with ``x1 > x2 > ... > xr`` coincides with plain tuple
comparison, so bases are listed largest first (``x1^t`` leads).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Iterable, Iterator, Mapping, Sequence

import numpy as np

MAX_EXPONENT = 1 << 16


class ContractViolation(ValueError):
    """Raised when an operation's precondition is broken by the caller."""


@dataclass(frozen=True)
class RingContext:
    """The polynomial ring K[x1, ..., xr] with the standard grading."""

    r: int

    def __post_init__(self):
        if not isinstance(self.r, int) or self.r < 1:
            raise ContractViolation(f"number of variables must be >= 1, got {self.r!r}")


class Monomial(tuple):
    """Exponent vector ``(a1, ..., ar)`` standing for ``x1^a1 * ... * xr^ar``.

    ``*`` multiplies monomials (it does not repeat the tuple).
    """

    __slots__ = ()

    def __new__(cls, exponents: Iterable[int]):
        exps = tuple(int(e) for e in exponents)
        for e in exps:
            if e < 0 or e > MAX_EXPONENT:
                raise ContractViolation(f"exponent out of range: {exps}")
        return super().__new__(cls, exps)

    @classmethod
    def one(cls, r: int) -> "Monomial":
        return cls((0,) * r)

    @classmethod
    def var(cls, r: int, i: int, power: int = 1) -> "Monomial":
        """``x_{i+1}^power`` (``i`` is 0-based)."""
        e = [0] * r
        e[i] = power
        return cls(e)

    @property
    def nvars(self) -> int:
        return len(self)

    @property
    def degree(self) -> int:
        return sum(self)

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(i for i, e in enumerate(self) if e)

    def divides(self, other: "Monomial") -> bool:
        return divides(self, other)

    def __mul__(self, other):
        if not isinstance(other, tuple):
            return NotImplemented
        _check_same_ring(self, other)
        return Monomial(a + b for a, b in zip(self, other))

    __rmul__ = __mul__

    def __repr__(self):
        return f"Monomial({tuple(self)})"

    def __str__(self):
        return render_monomial(self)


def _check_same_ring(a: Sequence[int], b: Sequence[int]) -> None:
    if len(a) != len(b):
        raise ContractViolation(f"monomials live in different rings: {len(a)} vs {len(b)} variables")


def divides(a: Sequence[int], b: Sequence[int]) -> bool:
    """True iff the monomial ``a`` divides ``b`` (coordinate-wise ``a <= b``)."""
    _check_same_ring(a, b)
    return all(x <= y for x, y in zip(a, b))


def grlex_key(m: Sequence[int]) -> tuple:
    """Sort key: larger key means larger in graded-lex order."""
    return (sum(m), tuple(m))


def render_monomial(m: Sequence[int]) -> str:
    parts = []
    for i, e in enumerate(m):
        if e == 1:
            parts.append(f"x{i + 1}")
        elif e > 1:
            parts.append(f"x{i + 1}^{e}")
    return "*".join(parts) if parts else "1"


def _compositions(t: int, bounds: Sequence[int]) -> Iterator[tuple[int, ...]]:
    # lex-descending compositions of t with part i <= bounds[i]
    r = len(bounds)
    tail_cap = [0] * (r + 1)
    for i in range(r - 1, -1, -1):
        tail_cap[i] = tail_cap[i + 1] + bounds[i]
    if t > tail_cap[0]:
        return
    prefix = [0] * r

    def rec(i: int, rem: int):
        if i == r - 1:
            prefix[i] = rem
            yield tuple(prefix)
            return
        hi = min(rem, bounds[i])
        lo = max(0, rem - tail_cap[i + 1])
        for e in range(hi, lo - 1, -1):
            prefix[i] = e
            yield from rec(i + 1, rem - e)

    yield from rec(0, t)


def enumerate_monomials(ring: RingContext | int, t: int) -> list[Monomial]:
    """All monomials of degree ``t``, largest first in graded-lex order.

    >>> len(enumerate_monomials(5, 2))
    15
    """
    r = ring.r if isinstance(ring, RingContext) else int(ring)
    if t < 0:
        return []
    return [Monomial(m) for m in _compositions(t, [t] * r)]


def count_monomials(r: int, t: int) -> int:
    return comb(t + r - 1, r - 1) if t >= 0 else 0


@dataclass(frozen=True)
class MonomialIdeal:
    """An Artinian monomial ideal given by its minimal generators.

    Generators are stored sorted (graded-lex, largest first) so that two
    ideals with the same generator set compare and hash equal.
    """

    ring: RingContext
    generators: tuple[Monomial, ...]

    def __post_init__(self):
        gens = tuple(Monomial(g) for g in self.generators)
        for g in gens:
            if len(g) != self.ring.r:
                raise ContractViolation(f"generator {g} does not have {self.ring.r} exponents")
            if g.degree == 0:
                raise ContractViolation("the unit ideal is not allowed")
        for a in gens:
            for b in gens:
                if a is not b and a != b and divides(a, b):
                    raise ContractViolation(f"generators not minimal: {render_monomial(a)} divides {render_monomial(b)}")
        if len(set(gens)) != len(gens):
            raise ContractViolation("duplicate generators")
        missing = [i + 1 for i in range(self.ring.r) if self.pure_power_bound_of(gens, i) is None]
        if missing:
            raise ContractViolation(
                "ideal is not Artinian: no pure power of " + ", ".join(f"x{i}" for i in missing)
            )
        object.__setattr__(self, "generators", tuple(sorted(gens, key=grlex_key, reverse=True)))

    @classmethod
    def from_generators(cls, r: int, generators: Iterable[Sequence[int]]) -> "MonomialIdeal":
        """Build from any generating set; non-minimal generators are dropped."""
        return cls(RingContext(r), tuple(minimal_generators(Monomial(g) for g in generators)))

    @staticmethod
    def pure_power_bound_of(gens, i: int) -> int | None:
        best = None
        for g in gens:
            if g[i] and sum(g) == g[i]:
                best = g[i] if best is None else min(best, g[i])
        return best

    @property
    def r(self) -> int:
        return self.ring.r

    @property
    def pure_powers(self) -> tuple[int, ...]:
        """Exponent ``a_i`` of the pure-power generator ``x_i^{a_i}`` for each variable."""
        return tuple(self.pure_power_bound_of(self.generators, i) for i in range(self.r))

    def contains(self, m: Sequence[int]) -> bool:
        """Monomial membership: ``m`` is divisible by some generator."""
        return any(all(g_i <= m_i for g_i, m_i in zip(g, m)) for g in self.generators)

    def __str__(self):
        return ", ".join(render_monomial(g) for g in self.generators)


def minimal_generators(generators: Iterable[Sequence[int]]) -> list[Monomial]:
    """Drop every generator divisible by another one (duplicates collapse)."""
    gens = sorted(set(Monomial(g) for g in generators), key=grlex_key)
    kept: list[Monomial] = []
    for g in gens:
        # anything that divides g has degree <= deg g and is already in kept
        if not any(divides(h, g) for h in kept):
            kept.append(g)
    return sorted(kept, key=grlex_key, reverse=True)


@dataclass(frozen=True)
class GradedBasis:
    """Standard monomials of one degree, largest first in graded-lex order."""

    degree: int
    monomials: tuple[Monomial, ...]

    def __len__(self):
        return len(self.monomials)

    def __iter__(self):
        return iter(self.monomials)

    def __getitem__(self, i):
        return self.monomials[i]

    @property
    def index(self) -> dict[Monomial, int]:
        idx = self.__dict__.get("_index")
        if idx is None:
            idx = {m: i for i, m in enumerate(self.monomials)}
            object.__setattr__(self, "_index", idx)
        return idx

    @property
    def array(self) -> np.ndarray:
        """The basis as an ``(h, r)`` integer array (same row order)."""
        arr = self.__dict__.get("_array")
        if arr is None:
            arr = np.asarray(self.monomials, dtype=np.int64).reshape(len(self.monomials), -1)
            object.__setattr__(self, "_array", arr)
        return arr


def _standard_array(t: int, bounds: Sequence[int], gens: Sequence[Sequence[int]]) -> np.ndarray:
    """Degree-t exponent vectors with ``e_i <= bounds[i]`` avoiding ``gens``, lex-descending.

    Variables are assigned left to right; a generator is tested as soon as
    every variable in its support has been assigned, which prunes early.
    """
    r = len(bounds)
    tail_cap = [0] * (r + 1)
    for i in range(r - 1, -1, -1):
        tail_cap[i] = tail_cap[i + 1] + bounds[i]
    by_last: list[list[np.ndarray]] = [[] for _ in range(r)]
    for g in gens:
        sup = [i for i, e in enumerate(g) if e]
        by_last[sup[-1]].append(np.asarray(g[: sup[-1] + 1], dtype=np.int64))
    states = np.zeros((1, 0), dtype=np.int64)
    rem = np.array([t], dtype=np.int64)
    for i in range(r):
        parents, exps = [], []
        for e in range(min(bounds[i], t), -1, -1):
            ok = np.flatnonzero((rem >= e) & (rem - e <= tail_cap[i + 1]))
            if ok.size:
                parents.append(ok)
                exps.append(np.full(ok.size, e, dtype=np.int64))
        if not parents:
            return np.zeros((0, r), dtype=np.int64)
        parent = np.concatenate(parents)
        exp = np.concatenate(exps)
        # prefixes are already lex-descending and e was visited downwards, so a
        # stable sort on the parent index keeps the whole array lex-descending
        order = np.argsort(parent, kind="stable")
        parent, exp = parent[order], exp[order]
        states = np.concatenate([states[parent], exp[:, None]], axis=1)
        rem = rem[parent] - exp
        if by_last[i]:
            hit = np.zeros(len(states), dtype=bool)
            for g in by_last[i]:
                hit |= np.all(states >= g, axis=1)
            states, rem = states[~hit], rem[~hit]
    return states


@lru_cache(maxsize=256)
def standard_basis(I: MonomialIdeal, t: int) -> GradedBasis:
    """Degree-``t`` monomials not divisible by any generator of ``I``.

    Pure-power generators cap the exponents during enumeration; every other
    generator is tested by divisibility.
    """
    if t < 0:
        return GradedBasis(t, ())
    bounds = [a - 1 for a in I.pure_powers]
    other = [g for g in I.generators if len(g.support) > 1]
    arr = _standard_array(t, bounds, other)
    basis = GradedBasis(t, tuple(tuple.__new__(Monomial, row) for row in arr.tolist()))
    object.__setattr__(basis, "_array", arr)
    return basis


def socle_degree(I: MonomialIdeal) -> int:
    """Largest ``e`` with a nonzero graded piece (A_t = 0 forces A_{t+1} = 0)."""
    t = 0
    while standard_basis(I, t + 1).monomials:
        t += 1
    return t


def _normalize(c, char: int):
    if char:
        if isinstance(c, Fraction):
            if c.denominator % char == 0:
                raise ContractViolation(f"coefficient {c} undefined in characteristic {char}")
            return c.numerator * pow(c.denominator, -1, char) % char
        return int(c) % char
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


class Polynomial:
    """Finite map monomial -> nonzero coefficient, optionally tagged homogeneous.

    Coefficients are Python integers (or ``Fraction``) in characteristic 0; a
    polynomial read in characteristic ``p`` is obtained with :meth:`mod`.
    """

    __slots__ = ("terms", "degree", "nvars")

    def __init__(self, terms: Mapping[Sequence[int], object] | Iterable = (), degree: int | None = None,
                 nvars: int | None = None):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Monomial, object] = {}
        for m, c in items:
            m = Monomial(m)
            acc[m] = acc.get(m, 0) + c
        self.terms = {m: c for m, c in acc.items() if c != 0}
        lens = {len(m) for m in self.terms}
        if len(lens) > 1:
            raise ContractViolation("polynomial mixes monomials from different rings")
        self.nvars = lens.pop() if lens else nvars
        if degree is not None:
            bad = [m for m in self.terms if m.degree != degree]
            if bad:
                raise ContractViolation(f"terms {bad[:3]} are not of degree {degree}")
        self.degree = degree

    @classmethod
    def homogeneous(cls, terms, degree: int, nvars: int | None = None) -> "Polynomial":
        return cls(terms, degree=degree, nvars=nvars)

    @classmethod
    def from_coords(cls, basis: GradedBasis, coords: Sequence) -> "Polynomial":
        return cls(((m, c) for m, c in zip(basis.monomials, coords)), degree=basis.degree,
                   nvars=len(basis.monomials[0]) if basis.monomials else None)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: "Polynomial") -> "Polynomial":
        terms = dict(self.terms)
        for m, c in other.terms.items():
            terms[m] = terms.get(m, 0) + c
        deg = self.degree if self.degree == other.degree else None
        return Polynomial(terms, degree=deg, nvars=self.nvars or other.nvars)

    def __neg__(self):
        return Polynomial({m: -c for m, c in self.terms.items()}, degree=self.degree, nvars=self.nvars)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "Polynomial":
        return Polynomial({m: c * v for m, v in self.terms.items()}, degree=self.degree, nvars=self.nvars)

    def coefficient(self, m: Sequence[int]):
        return self.terms.get(Monomial(m), 0)

    def mod(self, char: int) -> "Polynomial":
        """Coefficients as canonical residues ``0..p-1`` (identity when ``char == 0``)."""
        if not char:
            return self
        return Polynomial({m: _normalize(c, char) for m, c in self.terms.items()},
                          degree=self.degree, nvars=self.nvars)

    def sorted_terms(self) -> list[tuple[Monomial, object]]:
        return sorted(self.terms.items(), key=lambda mc: grlex_key(mc[0]), reverse=True)

    def coords(self, basis: GradedBasis) -> list:
        """Coordinates in ``basis``; every term must be a basis monomial."""
        out = [0] * len(basis)
        idx = basis.index
        for m, c in self.terms.items():
            if m not in idx:
                raise ContractViolation(f"{render_monomial(m)} is not a standard monomial of degree {basis.degree}")
            out[idx[m]] = c
        return out

    def __repr__(self):
        return f"Polynomial({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        out = []
        for m, c in self.sorted_terms():
            mono = render_monomial(m)
            if mono == "1":
                out.append(str(c))
            elif c == 1:
                out.append(mono)
            elif c == -1:
                out.append("-" + mono)
            else:
                out.append(f"{c}*{mono}")
        return " + ".join(out).replace("+ -", "- ")


def reduce_mod_ideal(f: Polynomial, I: MonomialIdeal, char: int = 0) -> Polynomial:
    """Image of ``f`` in ``R/I`` over a field of characteristic ``char``.

    Terms divisible by a generator are dropped; in characteristic ``p`` the
    remaining coefficients become residues and zero residues vanish.
    """
    kept = {m: c for m, c in f.terms.items() if not I.contains(m)}
    return Polynomial(kept, degree=f.degree, nvars=f.nvars or I.r).mod(char)


def multiply_linear(f: Polynomial, coeffs: Sequence) -> Polynomial:
    """``f * (c1*x1 + ... + cr*xr)`` with like terms combined, no reduction."""
    r = len(coeffs)
    if f.nvars is not None and f.nvars != r:
        raise ContractViolation(f"linear form has {r} coefficients but f lives in {f.nvars} variables")
    out: dict[Monomial, object] = {}
    for m, c in f.terms.items():
        for i, a in enumerate(coeffs):
            if not a:
                continue
            e = list(m)
            e[i] += 1
            key = Monomial(e)
            out[key] = out.get(key, 0) + a * c
    deg = f.degree + 1 if f.degree is not None else None
    return Polynomial(out, degree=deg, nvars=r)
