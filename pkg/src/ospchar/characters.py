"""Truncated formal characters and generalized Verma characters for osp(n|2).

A :class:`Character` is a finite map weight -> integer together with a delta
floor ``min_delta``: coefficients are exact for every lattice point whose
delta-coordinate is >= the floor (absent means zero there) and nothing is
claimed below it.  ``min_delta = None`` marks a character whose full support
is finite, i.e. exact everywhere.

Truncating along the delta axis is the one representation choice everything
else leans on.  Every factor of the Verma character

    ch M_nu = prod_{alpha odd} (1 + e^{-alpha}) / (1 - e^{-2 delta}) * ch L^0_nu

lowers or preserves the delta-coordinate (odd roots lower it by one, the
geometric series by two, the o(n) character not at all), so "exact above a
delta floor" is closed under all the arithmetic performed here.

Characters of the o(n) factor are computed by the Weyl character formula:
alternating sum over the signed-permutation group, then exact sparse division
by the alternating rho-sum.  The division peels terms from the lexicographic
bottom, which is sound because lexicographic order is translation invariant.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .weights import (
    Algebra,
    DomainError,
    Weight,
    WeylElement,
    delta_involution,
    is_dominant_integral,
    is_orthogonal_dominant,
    is_typical,
    orthogonal_weyl_group,
    positive_roots,
    rho,
    weight_sort_key,
    weyl_group,
)

__all__ = [
    "Character",
    "o_n_character",
    "o_n_dimension",
    "verma_character",
    "kac_typical_character",
    "character_to_json",
    "character_from_json",
    "weyl_group",
    "WeylElement",
]

Cutoff = Fraction | None


def _as_cutoff(value) -> Cutoff:
    return None if value is None else Fraction(value)


def _max_cutoff(a: Cutoff, b: Cutoff) -> Cutoff:
    if a is None:
        return b
    if b is None:
        return a
    return max(a, b)


class Character:
    """Sparse exact character, trusted for delta-coordinates >= ``min_delta``."""

    __slots__ = ("alg", "terms", "min_delta")

    def __init__(self, alg: Algebra, terms: dict[Weight, int], min_delta: Cutoff = None):
        min_delta = _as_cutoff(min_delta)
        clean = {}
        for w, c in terms.items():
            if c == 0:
                continue
            if min_delta is not None and w.delta_part < min_delta:
                raise DomainError(f"term {w} lies below the cutoff {min_delta}")
            clean[w] = c
        self.alg = alg
        self.terms = clean
        self.min_delta = min_delta

    @classmethod
    def zero(cls, alg: Algebra, min_delta: Cutoff = None) -> "Character":
        return cls(alg, {}, min_delta)

    @classmethod
    def unit(cls, alg: Algebra) -> "Character":
        return cls(alg, {alg.zero(): 1}, None)

    def coeff(self, w: Weight) -> int:
        return self.terms.get(w, 0)

    @property
    def support(self) -> set[Weight]:
        return set(self.terms)

    def items_sorted(self) -> list[tuple[Weight, int]]:
        return sorted(self.terms.items(), key=lambda kv: weight_sort_key(kv[0]))

    def coefficient_sum(self) -> int:
        return sum(self.terms.values())

    def _combine(self, other: "Character", sign: int) -> "Character":
        if self.alg != other.alg:
            raise DomainError("characters over different algebras")
        cutoff = _max_cutoff(self.min_delta, other.min_delta)
        acc = dict(self.terms)
        for w, c in other.terms.items():
            acc[w] = acc.get(w, 0) + sign * c
        out = Character.__new__(Character)
        out.alg = self.alg
        out.terms = {
            w: c
            for w, c in acc.items()
            if c != 0 and (cutoff is None or w.delta_part >= cutoff)
        }
        out.min_delta = cutoff
        return out

    def __add__(self, other: "Character") -> "Character":
        return self._combine(other, 1)

    def __sub__(self, other: "Character") -> "Character":
        return self._combine(other, -1)

    def __neg__(self) -> "Character":
        return self * -1

    def __mul__(self, k: int) -> "Character":
        out = Character.__new__(Character)
        out.alg = self.alg
        out.terms = {} if k == 0 else {w: k * c for w, c in self.terms.items()}
        out.min_delta = self.min_delta
        return out

    __rmul__ = __mul__

    def mul_finite(self, f: "Character") -> "Character":
        """Multiply by a character with finite, fully exact support.

        The result is exact for delta >= self.min_delta + (largest delta
        boost in f): anything lower could receive contributions from below
        our own floor.
        """
        if f.min_delta is not None:
            raise DomainError("multiplier must be fully exact (min_delta None)")
        if self.alg != f.alg:
            raise DomainError("characters over different algebras")
        if self.min_delta is None:
            cutoff: Cutoff = None
        elif not f.terms:
            cutoff = self.min_delta
        else:
            cutoff = self.min_delta + max(w.delta_part for w in f.terms)
        acc: dict[Weight, int] = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in f.terms.items():
                w = w1 + w2
                acc[w] = acc.get(w, 0) + c1 * c2
        out = Character.__new__(Character)
        out.alg = self.alg
        out.terms = {
            w: c
            for w, c in acc.items()
            if c != 0 and (cutoff is None or w.delta_part >= cutoff)
        }
        out.min_delta = cutoff
        return out

    def restrict(self, min_delta) -> "Character":
        """Forget everything below a higher floor (truncation consistency)."""
        cutoff = _as_cutoff(min_delta)
        if cutoff is None:
            if self.min_delta is None:
                return self
            raise DomainError("cannot lower a cutoff by restriction")
        if self.min_delta is not None and cutoff < self.min_delta:
            raise DomainError("cannot lower a cutoff by restriction")
        out = Character.__new__(Character)
        out.alg = self.alg
        out.terms = {w: c for w, c in self.terms.items() if w.delta_part >= cutoff}
        out.min_delta = cutoff
        return out

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Character)
            and self.alg == other.alg
            and self.min_delta == other.min_delta
            and self.terms == other.terms
        )

    def __repr__(self) -> str:
        n = len(self.terms)
        return f"<Character {self.alg.family}{self.alg.m}: {n} terms, cutoff {self.min_delta}>"


def equal_above(a: Character, b: Character, min_delta) -> bool:
    """Coefficientwise equality on the region delta >= min_delta."""
    cutoff = Fraction(min_delta)
    return a.restrict(cutoff).terms == b.restrict(cutoff).terms


# --------------------------------------------------------------------------
# o(n) characters via the Weyl character formula.

def _orthogonal_positive_roots(alg: Algebra) -> list[tuple[int, ...]]:
    """Positive roots of the o(n) factor as doubled eps-tuples."""
    m = alg.m
    roots = []
    for j in range(m):
        for k in range(j + 1, m):
            plus = [0] * m
            plus[j], plus[k] = 2, 2
            minus = [0] * m
            minus[j], minus[k] = 2, -2
            roots.append(tuple(minus))
            roots.append(tuple(plus))
    if alg.family == "B":
        for j in range(m):
            short = [0] * m
            short[j] = 2
            roots.append(tuple(short))
    return roots


def _orthogonal_rho(alg: Algebra) -> tuple[int, ...]:
    m = alg.m
    if alg.family == "D":
        return tuple(2 * (m - i) for i in range(1, m + 1))
    return tuple(2 * (m - i) + 1 for i in range(1, m + 1))


def _apply_eps(w: WeylElement, vec: tuple[int, ...]) -> tuple[int, ...]:
    out = [0] * len(vec)
    for i, (p, s) in enumerate(zip(w.perm, w.signs)):
        out[p] = s * vec[i]
    return tuple(out)


_DIVISION_CAP = 5_000_000


def _divide_exact(numer: dict[tuple, int], denom: dict[tuple, int]) -> dict[tuple, int]:
    """Exact division of sparse Laurent polynomials on Z^m exponents.

    Repeatedly cancels the lexicographically smallest remaining term; since
    lex order is translation invariant the smallest term of the remainder is
    always quotient-min times divisor-min, so this terminates in exactly
    |quotient| steps when the division is exact.
    """
    dmin = min(denom)
    dcoeff = denom[dmin]
    rem = {e: c for e, c in numer.items() if c != 0}
    quot: dict[tuple, int] = {}
    steps = 0
    while rem:
        steps += 1
        if steps > _DIVISION_CAP:
            raise ArithmeticError("character division failed to terminate")
        nmin = min(rem)
        c = rem[nmin]
        if c % dcoeff:
            raise ArithmeticError("non-exact character division")
        q = c // dcoeff
        qexp = tuple(a - b for a, b in zip(nmin, dmin))
        quot[qexp] = q
        for dexp, dc in denom.items():
            key = tuple(a + b for a, b in zip(qexp, dexp))
            val = rem.get(key, 0) - q * dc
            if val:
                rem[key] = val
            else:
                rem.pop(key, None)
    return quot


@lru_cache(maxsize=None)
def _orthogonal_character_eps(alg: Algebra, eps: tuple[int, ...]) -> tuple[tuple[tuple[int, ...], int], ...]:
    """Full character of the o(n) irreducible with highest eps-part, on doubled tuples."""
    rho_o = _orthogonal_rho(alg)
    shifted = tuple(a + b for a, b in zip(eps, rho_o))
    numer: dict[tuple, int] = {}
    denom: dict[tuple, int] = {}
    for w in orthogonal_weyl_group(alg):
        sgn = w.sign
        key = _apply_eps(w, shifted)
        numer[key] = numer.get(key, 0) + sgn
        key = _apply_eps(w, rho_o)
        denom[key] = denom.get(key, 0) + sgn
    # ch = [sum_w sign(w) e^{w(eps+rho_o)}] / [sum_w sign(w) e^{w rho_o}]: the
    # rho_o factors cancel, so the quotient exponents are the weights themselves.
    quot = _divide_exact(numer, denom)
    return tuple(sorted(quot.items()))


def o_n_character(alg: Algebra, nu: Weight) -> Character:
    """Character of e^{nu_0 delta} tensor the o(n) irreducible on the eps part.

    Finite support, exact everywhere.  The delta coordinate rides along
    unchanged on every term.
    """
    if not is_orthogonal_dominant(alg, nu):
        raise DomainError(f"{nu} has a non-dominant o(n) part")
    d0 = nu.half[0]
    terms = {
        Weight((d0, *e)): c for e, c in _orthogonal_character_eps(alg, nu.half[1:])
    }
    return Character(alg, terms, None)


def o_n_dimension(alg: Algebra, nu: Weight) -> int:
    """Weyl dimension product over the o(n) positive roots."""
    if not is_orthogonal_dominant(alg, nu):
        raise DomainError(f"{nu} has a non-dominant o(n) part")
    rho_o = _orthogonal_rho(alg)
    shifted = tuple(a + b for a, b in zip(nu.half[1:], rho_o))
    dim = Fraction(1)
    for root in _orthogonal_positive_roots(alg):
        dim *= Fraction(sum(a * b for a, b in zip(shifted, root)),
                        sum(a * b for a, b in zip(rho_o, root)))
    assert dim.denominator == 1 and dim > 0
    return int(dim)


# --------------------------------------------------------------------------
# Generalized Verma characters.

@lru_cache(maxsize=None)
def odd_root_product(alg: Algebra) -> tuple[tuple[tuple[int, ...], int], ...]:
    """prod_{alpha in Delta_1^+} (1 + e^{-alpha}), expanded over subsets."""
    acc: dict[tuple[int, ...], int] = {(0,) * (alg.m + 1): 1}
    _, odd = positive_roots(alg)
    for root in sorted(odd, key=weight_sort_key):
        nxt = dict(acc)
        for exp, c in acc.items():
            key = tuple(a - b for a, b in zip(exp, root.half))
            nxt[key] = nxt.get(key, 0) + c
        acc = nxt
    return tuple(sorted(acc.items()))


_verma_cache: dict[tuple[Algebra, Weight], tuple[Fraction, Character]] = {}


def verma_character(alg: Algebra, nu: Weight, min_delta) -> Character:
    """Character of the generalized Verma module induced from the o(n) part.

    nu needs a dominant eps part; its delta coordinate is arbitrary (terms
    of an irreducible-character expansion routinely have negative ones).  A
    cutoff above nu_0 yields the empty character.
    """
    cutoff = Fraction(min_delta)
    cached = _verma_cache.get((alg, nu))
    if cached is not None and cached[0] <= cutoff:
        return cached[1].restrict(cutoff)

    if not is_orthogonal_dominant(alg, nu):
        raise DomainError(f"{nu} has a non-dominant o(n) part")

    base = o_n_character(alg, nu)  # carries the e^{nu_0 delta} factor
    floor2 = cutoff - nu.delta_part  # delta budget for the odd/geometric part
    acc: dict[Weight, int] = {}
    for exp, c in odd_root_product(alg):
        # exp[0] <= 0; geometric terms subtract 2k more from the delta axis
        room = Fraction(exp[0], 2) - floor2
        if room < 0:
            continue
        max_k = int(room // 2)
        for k in range(max_k + 1):
            shifted = (exp[0] - 4 * k, *exp[1:])
            for w, cw in base.terms.items():
                key = Weight(tuple(a + b for a, b in zip(w.half, shifted)))
                acc[key] = acc.get(key, 0) + c * cw
    result = Character(
        alg,
        {w: c for w, c in acc.items() if c != 0 and w.delta_part >= cutoff},
        cutoff,
    )
    _verma_cache[(alg, nu)] = (cutoff, result)
    return result


def kac_typical_character(alg: Algebra, lam: Weight, min_delta) -> Character:
    """The closed character of a typical irreducible: ch M_lam - ch M_{lam^delta}.

    Raises for atypical weights, where the closed formula is false.
    """
    if not is_dominant_integral(alg, lam):
        raise DomainError(f"{lam} is not dominant integral")
    if not is_typical(alg, lam):
        raise DomainError(f"{lam} is atypical; the typical character formula does not apply")
    return verma_character(alg, lam, min_delta) - verma_character(
        alg, delta_involution(alg, lam), min_delta
    )


# --------------------------------------------------------------------------
# JSON round trip.

def _cutoff_to_json(cutoff: Cutoff) -> str | None:
    if cutoff is None:
        return None
    doubled = 2 * cutoff
    if doubled.denominator != 1:
        raise DomainError("cutoffs serialize only at half-integer resolution")
    num = int(doubled)
    return str(num // 2) if num % 2 == 0 else f"{num}/2"


def _cutoff_from_json(text: str | None) -> Cutoff:
    if text is None:
        return None
    if "/" in text:
        num, _, den = text.partition("/")
        if den != "2":
            raise DomainError(f"bad cutoff {text!r}")
        return Fraction(int(num), 2)
    return Fraction(int(text))


def character_to_json(ch: Character) -> dict:
    return {
        "algebra": {"family": ch.alg.family, "m": ch.alg.m},
        "min_delta": _cutoff_to_json(ch.min_delta),
        "terms": [
            {"weight": w.render(), "coeff": str(c)} for w, c in ch.items_sorted()
        ],
    }


def character_from_json(obj: dict) -> Character:
    alg = Algebra.make(obj["algebra"]["family"], int(obj["algebra"]["m"]))
    terms = {
        Weight.parse(entry["weight"]): int(entry["coeff"]) for entry in obj["terms"]
    }
    return Character(alg, terms, _cutoff_from_json(obj["min_delta"]))
