"""Exact weight-lattice arithmetic for the ortho-symplectic superalgebras osp(n|2).

Weights live in the (m+1)-dimensional space spanned by delta (the symplectic
direction) and eps_1..eps_m (the orthogonal directions) and are written

    lam = (lam_0; lam_1, ..., lam_m) = lam_0*delta + sum_i lam_i*eps_i.

Two families are supported, distinguished by the even part o(n) + sl(2):

    D(m|1) = osp(2m|2),   n = 2m,   m >= 2,
    B(m|1) = osp(2m+1|2), n = 2m+1, m >= 1.

All coordinates are exact half-integers.  Internally a weight stores the
*doubled* coordinates as a tuple of ints, so equality, hashing and arithmetic
never touch floating point.  The invariant bilinear form is

    (delta, delta) = -1,  (delta, eps_i) = 0,  (eps_i, eps_j) = delta_ij,

under which the odd roots are isotropic.  Besides root data this module
implements the combinatorics that drive everything downstream: dominance,
atypicality, the delta-involution lam_0 -> n-2-lam_0, the block-generating
moves t_alpha and t_w, a canonical block invariant, and the two partial
orders (block order and the positive-root cone order).
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, NamedTuple


class DomainError(ValueError):
    """A mathematically invalid input (non-dominant weight, wrong family, ...)."""


Half = Fraction(1, 2)


def _scalar_render(double: int) -> str:
    """Render a doubled coordinate as an integer or a reduced p/2 fraction."""
    if double % 2 == 0:
        return str(double // 2)
    return f"{double}/2"


def _scalar_parse(text: str) -> int:
    """Parse an integer or p/2 fraction into its doubled value."""
    text = text.strip()
    if "/" in text:
        num, _, den = text.partition("/")
        if den.strip() != "2":
            raise DomainError(f"only halves are allowed as fractions: {text!r}")
        return int(num)
    return 2 * int(text)


class Weight(NamedTuple):
    """A point of the weight lattice, stored via doubled coordinates.

    ``half[0]`` is twice the delta-coordinate, ``half[i]`` twice the eps_i
    coordinate.  Construct through :meth:`from_coords` or :meth:`parse`
    unless the doubled tuple is already at hand.
    """

    half: tuple[int, ...]

    @classmethod
    def from_coords(cls, coords: Iterable[int | Fraction]) -> "Weight":
        doubled = []
        for c in coords:
            d = 2 * Fraction(c)
            if d.denominator != 1:
                raise DomainError(f"coordinate {c} is not a half-integer")
            doubled.append(int(d))
        return cls(tuple(doubled))

    @classmethod
    def parse(cls, text: str) -> "Weight":
        """Parse the ``"lam0;lam1,...,lamm"`` grammar (whitespace ignored)."""
        compact = "".join(text.split())
        head, sep, tail = compact.partition(";")
        if not sep:
            raise DomainError(f"missing ';' in weight {text!r}")
        parts = [head] + (tail.split(",") if tail else [])
        try:
            return cls(tuple(_scalar_parse(p) for p in parts))
        except ValueError as exc:
            raise DomainError(f"bad weight literal {text!r}: {exc}") from None

    def render(self) -> str:
        """Inverse of :meth:`parse`; rendering then parsing is the identity."""
        head = _scalar_render(self.half[0])
        tail = ",".join(_scalar_render(h) for h in self.half[1:])
        return f"{head};{tail}"

    def __str__(self) -> str:
        return f"({self.render()})"

    @property
    def m(self) -> int:
        return len(self.half) - 1

    @property
    def coords(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(h, 2) for h in self.half)

    @property
    def delta_part(self) -> Fraction:
        return Fraction(self.half[0], 2)

    def eps(self, i: int) -> Fraction:
        """The eps_i coordinate, 1-based."""
        return Fraction(self.half[i], 2)

    @property
    def is_integral(self) -> bool:
        return all(h % 2 == 0 for h in self.half)

    def int_coords(self) -> tuple[int, ...]:
        if not self.is_integral:
            raise DomainError(f"{self} is not integral")
        return tuple(h // 2 for h in self.half)

    @property
    def height(self) -> Fraction:
        return Fraction(sum(abs(h) for h in self.half), 2)

    @property
    def is_zero(self) -> bool:
        return not any(self.half)

    def __add__(self, other: "Weight") -> "Weight":  # type: ignore[override]
        return Weight(tuple(a + b for a, b in zip(self.half, other.half)))

    def __sub__(self, other: "Weight") -> "Weight":
        return Weight(tuple(a - b for a, b in zip(self.half, other.half)))

    def __neg__(self) -> "Weight":
        return Weight(tuple(-a for a in self.half))

    def __mul__(self, k: int) -> "Weight":  # type: ignore[override]
        return Weight(tuple(k * a for a in self.half))

    __rmul__ = __mul__


def weight_sort_key(w: Weight) -> tuple:
    """Deterministic output order: decreasing delta, then lexicographic."""
    return (-w.half[0], w.half)


class Algebra(NamedTuple):
    """Descriptor of osp(2m|2) (family ``"D"``) or osp(2m+1|2) (family ``"B"``)."""

    family: str
    m: int

    @classmethod
    def make(cls, family: str, m: int) -> "Algebra":
        family = family.upper()
        if family not in ("B", "D"):
            raise DomainError(f"unknown family {family!r}, expected 'B' or 'D'")
        if family == "D" and m < 2:
            raise DomainError("family D needs rank m >= 2")
        if family == "B" and m < 1:
            raise DomainError("family B needs rank m >= 1")
        return cls(family, m)

    @property
    def n(self) -> int:
        return 2 * self.m + (1 if self.family == "B" else 0)

    @property
    def name(self) -> str:
        return f"osp({self.n}|2)"

    def zero(self) -> Weight:
        return Weight((0,) * (self.m + 1))

    def delta(self) -> Weight:
        return Weight((2,) + (0,) * self.m)

    def eps(self, i: int) -> Weight:
        """The basis weight eps_i, 1-based."""
        if not 1 <= i <= self.m:
            raise DomainError(f"eps index {i} out of range 1..{self.m}")
        half = [0] * (self.m + 1)
        half[i] = 2
        return Weight(tuple(half))


def form(alg: Algebra, x: Weight, y: Weight) -> Fraction:
    """The invariant bilinear form, -x0*y0 + sum_i xi*yi."""
    acc = -x.half[0] * y.half[0]
    for a, b in zip(x.half[1:], y.half[1:]):
        acc += a * b
    return Fraction(acc, 4)


def height(w: Weight) -> Fraction:
    return w.height


def rho(alg: Algebra) -> Weight:
    """Half-sum of positive even roots minus half-sum of positive odd roots.

    D: (1-m; m-1, ..., 1, 0).  B: (1/2-m; m-1/2, ..., 3/2, 1/2).
    """
    m = alg.m
    if alg.family == "D":
        return Weight((2 * (1 - m),) + tuple(2 * (m - i) for i in range(1, m + 1)))
    return Weight((1 - 2 * m,) + tuple(2 * (m - i) + 1 for i in range(1, m + 1)))


@lru_cache(maxsize=None)
def positive_roots(alg: Algebra) -> tuple[frozenset[Weight], frozenset[Weight]]:
    """The positive even and odd roots (in that order).

    D: even {eps_j +- eps_k (j<k), 2delta}, odd {delta +- eps_i}.
    B: additionally eps_i among the even and delta among the odd roots.
    """
    m = alg.m
    even: set[Weight] = {2 * alg.delta()}
    for j in range(1, m + 1):
        for k in range(j + 1, m + 1):
            even.add(alg.eps(j) - alg.eps(k))
            even.add(alg.eps(j) + alg.eps(k))
    odd: set[Weight] = set()
    for i in range(1, m + 1):
        odd.add(alg.delta() - alg.eps(i))
        odd.add(alg.delta() + alg.eps(i))
    if alg.family == "B":
        even.update(alg.eps(i) for i in range(1, m + 1))
        odd.add(alg.delta())
    return frozenset(even), frozenset(odd)


@lru_cache(maxsize=None)
def simple_roots(alg: Algebra) -> tuple[Weight, ...]:
    """The distinguished simple system: one odd root, then the o(n) tail."""
    m = alg.m
    roots = [alg.delta() - alg.eps(1)]
    roots.extend(alg.eps(i) - alg.eps(i + 1) for i in range(1, m))
    if alg.family == "D":
        roots.append(alg.eps(m - 1) + alg.eps(m))
    else:
        roots.append(alg.eps(m))
    return tuple(roots)


def is_dominant_integral(alg: Algebra, w: Weight) -> bool:
    """Highest weights of finite-dimensional irreducibles.

    Integrality, the o(n) dominance chain on the eps part (the last entry may
    be negative in family D), and lam_0 >= t where t is the largest index with
    lam_t != 0.
    """
    if len(w.half) != alg.m + 1 or not w.is_integral:
        return False
    c = w.int_coords()
    lam0, eps = c[0], c[1:]
    m = alg.m
    if alg.family == "D":
        if any(e < 0 for e in eps[: m - 1]):
            return False
        chain = eps[: m - 1] + (abs(eps[m - 1]),)
    else:
        if any(e < 0 for e in eps):
            return False
        chain = eps
    if any(chain[i] < chain[i + 1] for i in range(len(chain) - 1)):
        return False
    t = max((i + 1 for i, e in enumerate(eps) if e != 0), default=0)
    return lam0 >= t


def is_orthogonal_dominant(alg: Algebra, w: Weight) -> bool:
    """Dominance of the eps part for o(n); the delta coordinate is ignored.

    Accepts both integer and half-odd-integer eps parts (the latter occur as
    shifted intermediates); the coordinates must all have the same parity.
    """
    if len(w.half) != alg.m + 1:
        return False
    eps = w.half[1:]
    if len({h % 2 for h in eps}) > 1:
        return False
    m = alg.m
    if alg.family == "D":
        chain = eps[: m - 1] + (abs(eps[m - 1]),)
    else:
        chain = eps
    if any(h < 0 for h in chain):
        return False
    return all(chain[i] >= chain[i + 1] for i in range(len(chain) - 1))


def atypical_roots(alg: Algebra, lam: Weight) -> frozenset[Weight]:
    """All odd roots alpha != delta with (lam + rho, alpha) = 0.

    Empty means lam is typical.  At most one root can occur except in family D
    with (lam+rho) vanishing on both the delta and eps_m coordinates, where
    delta+eps_m and delta-eps_m appear together.
    """
    v = lam + rho(alg)
    _, odd = positive_roots(alg)
    delta = alg.delta()
    return frozenset(a for a in odd if a != delta and form(alg, v, a) == 0)


def is_typical(alg: Algebra, lam: Weight) -> bool:
    return not atypical_roots(alg, lam)


def delta_involution(alg: Algebra, lam: Weight) -> Weight:
    """Replace lam_0 by n-2-lam_0; an involution that preserves blocks."""
    half = list(lam.half)
    half[0] = 2 * (alg.n - 2) - half[0]
    return Weight(tuple(half))


def mirror(w: Weight) -> Weight:
    """Flip the sign of the eps_m coordinate (a diagram symmetry in family D)."""
    half = list(w.half)
    half[-1] = -half[-1]
    return Weight(tuple(half))


def t_alpha(alg: Algebra, lam: Weight, alpha: Weight) -> Weight:
    """The odd translation: lam + alpha when lam is alpha-atypical, else lam.

    Defined for alpha in Delta_1 with alpha != +-delta; for negative alpha
    this is exactly the inverse of t_{-alpha} because odd roots are isotropic.
    """
    _, odd = positive_roots(alg)
    delta = alg.delta()
    if (alpha not in odd and -alpha not in odd) or alpha in (delta, -delta):
        raise DomainError(f"{alpha} is not an odd root usable by t_alpha")
    if form(alg, lam + rho(alg), alpha) == 0:
        return lam + alpha
    return lam


class WeylElement(NamedTuple):
    """An element of W = W(o(n)) x W(sl2) acting on the weight lattice.

    ``delta_sign`` acts on the delta coordinate; the eps part maps
    eps_i -> signs[i] * eps_{perm[i]+1} (``perm`` is 0-based on positions).
    In family D only even numbers of eps sign flips occur.
    """

    delta_sign: int
    perm: tuple[int, ...]
    signs: tuple[int, ...]

    def apply(self, w: Weight) -> Weight:
        half = [self.delta_sign * w.half[0]] + [0] * len(self.perm)
        for i, (p, s) in enumerate(zip(self.perm, self.signs)):
            half[1 + p] = s * w.half[1 + i]
        return Weight(tuple(half))

    @property
    def sign(self) -> int:
        """Determinant on the (m+1)-dimensional reflection representation."""
        perm_sign = 1
        seen = [False] * len(self.perm)
        for start in range(len(self.perm)):
            if seen[start]:
                continue
            length, j = 0, start
            while not seen[j]:
                seen[j] = True
                j = self.perm[j]
                length += 1
            if length % 2 == 0:
                perm_sign = -perm_sign
        flip_sign = 1
        for s in self.signs:
            flip_sign *= s
        return self.delta_sign * perm_sign * flip_sign

    def compose(self, other: "WeylElement") -> "WeylElement":
        """self after other."""
        perm = tuple(self.perm[p] for p in other.perm)
        signs = tuple(other.signs[i] * self.signs[other.perm[i]] for i in range(len(self.perm)))
        return WeylElement(self.delta_sign * other.delta_sign, perm, signs)

    @classmethod
    def identity(cls, m: int) -> "WeylElement":
        return cls(1, tuple(range(m)), (1,) * m)


@lru_cache(maxsize=None)
def orthogonal_weyl_group(alg: Algebra) -> tuple[WeylElement, ...]:
    """The W(o(n)) factor: signed permutations of the eps coordinates.

    Family B allows all sign patterns (order 2^m * m!), family D only even
    numbers of flips (order 2^(m-1) * m!).  Deterministic enumeration order.
    """
    m = alg.m
    out = []
    for perm in itertools.permutations(range(m)):
        for signs in itertools.product((1, -1), repeat=m):
            if alg.family == "D" and signs.count(-1) % 2 == 1:
                continue
            out.append(WeylElement(1, perm, signs))
    return tuple(out)


@lru_cache(maxsize=None)
def weyl_group(alg: Algebra) -> tuple[WeylElement, ...]:
    """All of W = W(o(n)) x W(sl2); twice the size of the orthogonal factor."""
    out = []
    for ds in (1, -1):
        for w in orthogonal_weyl_group(alg):
            out.append(WeylElement(ds, w.perm, w.signs))
    return tuple(out)


def t_w(alg: Algebra, lam: Weight, w: WeylElement) -> Weight:
    """The dot action w(lam + rho) - rho."""
    r = rho(alg)
    return w.apply(lam + r) - r


# --------------------------------------------------------------------------
# Blocks.
#
# Two integral weights lie in the same block when a chain of t_alpha and t_w
# moves joins them.  On v = lam + rho the moves read: t_w permutes and
# sign-flips the eps entries (evenly many flips in family D unless an entry
# is zero) and flips v_0; t_alpha shifts a matched pair |v_i| = |v_0| jointly
# by one.  A matched pair can slide to 0 (family D) or reflect at 1/2
# (family B, where every entry is half-odd), which frees all sign data, so
# the matched value itself carries no block information.

BlockKey = tuple


def block_key(alg: Algebra, lam: Weight) -> BlockKey:
    """A canonical token: equal keys iff the weights share a block.

    Typical weights: the full W-orbit data of v = lam + rho, i.e. |v_0|, the
    multiset of |v_i|, and in family D the sign parity of the eps entries
    (recorded as 0 = unconstrained when some entry vanishes).  Atypical
    weights: the multiset of |v_i| with one matched entry removed; sliding
    the matched pair through its minimum makes every sign pattern reachable,
    so no parity is kept.
    """
    if not lam.is_integral:
        raise DomainError(f"blocks are defined for integral weights, got {lam}")
    v = lam + rho(alg)
    a = abs(v.half[0])
    magnitudes = sorted(abs(h) for h in v.half[1:])
    if a in magnitudes:
        remaining = list(magnitudes)
        remaining.remove(a)
        return ("atypical", tuple(remaining))
    if alg.family == "D" and 0 not in magnitudes:
        parity = 1
        for h in v.half[1:]:
            if h < 0:
                parity = -parity
    else:
        parity = 0
    return ("typical", a, tuple(magnitudes), parity)


def same_block(alg: Algebra, lam: Weight, mu: Weight) -> bool:
    return block_key(alg, lam) == block_key(alg, mu)


def natural_order(alg: Algebra, lam: Weight, mu: Weight) -> bool:
    """Strict cone order: lam - mu is a nonzero Z>=0 sum of positive roots.

    Every positive root is a Z>=0 sum of the m+1 simple roots, which are
    linearly independent, so the coefficients are unique and the test is a
    single exact linear solve.
    """
    if lam == mu:
        return False
    tau = (lam - mu).coords
    m = alg.m
    coeff = [tau[0]]
    if alg.family == "B":
        for j in range(1, m + 1):
            coeff.append(coeff[-1] + tau[j])
    else:
        for j in range(1, m - 1):
            coeff.append(coeff[-1] + tau[j])
        base = coeff[-1]
        coeff.append((tau[m - 1] - tau[m] + base) / 2)
        coeff.append((tau[m - 1] + tau[m] + base) / 2)
    return all(c >= 0 and c.denominator == 1 for c in coeff)


def block_order(alg: Algebra, lam: Weight, mu: Weight) -> bool:
    """lam and mu share a block and lam is strictly higher."""
    return lam.height > mu.height and same_block(alg, lam, mu)


def dominant_weights(alg: Algebra, max_height: int) -> list[Weight]:
    """All dominant integral weights of height <= max_height, sorted."""
    m = alg.m
    out: list[Weight] = []

    def eps_parts(pos: int, bound: int, budget: int, acc: list[int]) -> Iterator[tuple[int, ...]]:
        if pos > m:
            yield tuple(acc)
            return
        top = min(bound, budget)
        for v in range(top, -1, -1):
            acc.append(v)
            yield from eps_parts(pos + 1, v, budget - v, acc)
            acc.pop()
            if v and pos == m and alg.family == "D":
                acc.append(-v)
                yield from eps_parts(pos + 1, v, budget - v, acc)
                acc.pop()

    for lam0 in range(max_height + 1):
        for eps in eps_parts(1, max_height, max_height - lam0, []):
            t = max((i + 1 for i, e in enumerate(eps) if e != 0), default=0)
            if lam0 >= t:
                out.append(Weight.from_coords((lam0, *eps)))
    out.sort(key=weight_sort_key)
    return out
