"""The monomial ideal families studied here, plus a parser for custom ideals.

Grammar accepted by :func:`parse_ideal` (whitespace is ignored)::

    ideal  := gen (',' gen)*
    gen    := factor ('*' factor)*
    factor := 'x' INDEX ('^' EXP)?
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field
from itertools import combinations

from .monomials import ContractViolation, Monomial, MonomialIdeal, RingContext, minimal_generators, render_monomial


class FamilyTag(str, enum.Enum):
    UNIFORM_KD = "uniform"
    MIXED_ALPHA_D = "mixed"
    SQUARES_D = "squares"
    J_ALPHA = "j"
    CUSTOM = "custom"


class ParameterError(ContractViolation):
    pass


class IdealSyntaxError(ValueError):
    """Malformed ideal text.  ``line``/``column`` are 1-based."""

    def __init__(self, message: str, text: str, pos: int):
        self.pos = pos
        self.line = text.count("\n", 0, pos) + 1
        self.column = pos - (text.rfind("\n", 0, pos) + 1) + 1
        super().__init__(f"{message} at line {self.line}, column {self.column}")


def _squarefree(r: int, d: int):
    for S in combinations(range(r), d):
        e = [0] * r
        for i in S:
            e[i] = 1
        yield Monomial(e)


def _pure_powers(exps):
    r = len(exps)
    return [Monomial.var(r, i, a) for i, a in enumerate(exps)]


def family_uniform(r: int, k: int, d: int) -> MonomialIdeal:
    """``(x1^k, ..., xr^k) + (all squarefree monomials of degree d)``."""
    if r < 2 or k < 2 or not 2 <= d <= r:
        raise ParameterError(f"need r >= 2, k >= 2 and 2 <= d <= r (got r={r}, k={k}, d={d})")
    return MonomialIdeal.from_generators(r, _pure_powers([k] * r) + list(_squarefree(r, d)))


def family_mixed(alphas, d: int) -> MonomialIdeal:
    """``(x1^a1, ..., xr^ar) + (all squarefree monomials of degree d)`` with ``2 <= ai <= 4``."""
    alphas = tuple(int(a) for a in alphas)
    r = len(alphas)
    if any(a not in (2, 3, 4) for a in alphas):
        raise ParameterError(f"every exponent must lie in 2..4, got {alphas}")
    if not 4 <= d <= r:
        raise ParameterError(f"need 4 <= d <= r, got d={d}, r={r}")
    return MonomialIdeal.from_generators(r, _pure_powers(alphas) + list(_squarefree(r, d)))


def family_squares(r: int, d: int) -> MonomialIdeal:
    """``(x1^2, ..., xr^2) + (all squarefree monomials of degree d)``."""
    if not 2 <= d <= r:
        raise ParameterError(f"need 2 <= d <= r, got r={r}, d={d}")
    return MonomialIdeal.from_generators(r, _pure_powers([2] * r) + list(_squarefree(r, d)))


def family_J(r: int, alpha: int) -> MonomialIdeal:
    """Pure powers ``xi^alpha`` plus ``xi^(alpha-2) xm^2`` and ``xi^2 xm^(alpha-2)`` for all ``i < m``."""
    if r < 4 or alpha < 5:
        raise ParameterError(f"need r >= 4 and alpha >= 5, got r={r}, alpha={alpha}")
    gens = _pure_powers([alpha] * r)
    for i, m in combinations(range(r), 2):
        for a, b in ((alpha - 2, 2), (2, alpha - 2)):
            e = [0] * r
            e[i], e[m] = a, b
            gens.append(Monomial(e))
    return MonomialIdeal.from_generators(r, gens)


def minimalize(generators) -> list[Monomial]:
    """Remove every generator divisible by another; the rest are pairwise incomparable."""
    return minimal_generators(generators)


@dataclass(frozen=True)
class FamilySpec:
    """Tagged parameter record naming one ideal family (or a custom ideal)."""

    tag: FamilyTag
    r: int
    k: int | None = None
    alphas: tuple[int, ...] | None = None
    d: int | None = None
    alpha: int | None = None
    custom_generators: tuple[Monomial, ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "tag", FamilyTag(self.tag))
        if self.alphas is not None:
            object.__setattr__(self, "alphas", tuple(int(a) for a in self.alphas))
        tag = self.tag
        if tag is FamilyTag.MIXED_ALPHA_D and self.alphas is not None and len(self.alphas) != self.r:
            raise ParameterError(f"{len(self.alphas)} exponents given for r={self.r}")
        if tag is FamilyTag.J_ALPHA and (self.r < 4 or (self.alpha or 0) < 5):
            raise ParameterError("the J family needs r >= 4 and alpha >= 5")

    @classmethod
    def uniform(cls, r, k, d):
        return cls(FamilyTag.UNIFORM_KD, r, k=k, d=d)

    @classmethod
    def mixed(cls, alphas, d):
        alphas = tuple(alphas)
        return cls(FamilyTag.MIXED_ALPHA_D, len(alphas), alphas=alphas, d=d)

    @classmethod
    def squares(cls, r, d):
        return cls(FamilyTag.SQUARES_D, r, d=d)

    @classmethod
    def j(cls, r, alpha):
        return cls(FamilyTag.J_ALPHA, r, alpha=alpha)

    @classmethod
    def custom(cls, ideal: MonomialIdeal):
        return cls(FamilyTag.CUSTOM, ideal.r, custom_generators=ideal.generators)

    def ideal(self) -> MonomialIdeal:
        tag = self.tag
        if tag is FamilyTag.UNIFORM_KD:
            return family_uniform(self.r, self.k, self.d)
        if tag is FamilyTag.MIXED_ALPHA_D:
            return family_mixed(self.alphas, self.d)
        if tag is FamilyTag.SQUARES_D:
            return family_squares(self.r, self.d)
        if tag is FamilyTag.J_ALPHA:
            return family_J(self.r, self.alpha)
        return MonomialIdeal.from_generators(self.r, self.custom_generators)

    def key(self) -> str:
        """Stable identifier used for run keys and report rows."""
        tag = self.tag
        if tag is FamilyTag.UNIFORM_KD:
            return f"uniform:r={self.r}:k={self.k}:d={self.d}"
        if tag is FamilyTag.MIXED_ALPHA_D:
            return f"mixed:alphas={'-'.join(map(str, self.alphas))}:d={self.d}"
        if tag is FamilyTag.SQUARES_D:
            return f"squares:r={self.r}:d={self.d}"
        if tag is FamilyTag.J_ALPHA:
            return f"j:r={self.r}:alpha={self.alpha}"
        return "custom:" + render_ideal(self.ideal()).replace(" ", "")


_TOKEN = re.compile(r"\s*(?:(?P<var>x)(?P<idx>\d+)|(?P<op>[*^,])|(?P<num>\d+)|(?P<bad>\S))")


def _tokens(text: str):
    pos = 0
    n = len(text)
    while pos < n:
        m = _TOKEN.match(text, pos)
        if m is None:  # only trailing whitespace left
            break
        start = m.start("var") if m.group("var") else m.start(m.lastgroup)
        if m.group("var"):
            yield ("var", int(m.group("idx")), start)
        elif m.group("op"):
            yield (m.group("op"), None, start)
        elif m.group("num"):
            yield ("num", int(m.group("num")), start)
        else:
            raise IdealSyntaxError(f"unexpected character {m.group('bad')!r}", text, start)
        pos = m.end()
    yield ("end", None, len(text.rstrip()) if text.strip() else 0)


def parse_ideal(text: str, r: int) -> MonomialIdeal:
    """Parse ``"x1^4, x2^4, x1*x2"``-style text into a minimalized Artinian ideal.

    Raises :class:`IdealSyntaxError` with a position on malformed text and
    :class:`ContractViolation` when the ideal is not Artinian.
    """
    RingContext(r)
    toks = list(_tokens(text))
    pos = 0
    gens = []

    def peek():
        return toks[pos]

    def expect_factor():
        nonlocal pos
        kind, val, at = toks[pos]
        if kind != "var":
            raise IdealSyntaxError("expected a variable like x1", text, at)
        if not 1 <= val <= r:
            raise IdealSyntaxError(f"variable index {val} outside 1..{r}", text, at)
        pos += 1
        exp = 1
        if peek()[0] == "^":
            pos += 1
            kind, e, at = toks[pos]
            if kind != "num":
                raise IdealSyntaxError("expected an exponent after '^'", text, at)
            if e < 1:
                raise IdealSyntaxError("exponents must be >= 1", text, at)
            exp = e
            pos += 1
        return val - 1, exp

    while True:
        e = [0] * r
        i, a = expect_factor()
        e[i] += a
        while peek()[0] == "*":
            pos += 1
            i, a = expect_factor()
            e[i] += a
        gens.append(Monomial(e))
        kind, _, at = peek()
        if kind == ",":
            pos += 1
            continue
        if kind == "end":
            break
        raise IdealSyntaxError("expected ',' or '*'", text, at)
    return MonomialIdeal.from_generators(r, gens)


def render_ideal(I: MonomialIdeal) -> str:
    """Inverse printer of :func:`parse_ideal`."""
    return ", ".join(render_monomial(g) for g in I.generators)
