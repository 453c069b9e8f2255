"""Expansion of irreducible osp(n|2) characters into generalized Verma characters.

Every finite-dimensional irreducible character is an integer combination

    ch L_lam = sum_nu  c_nu * ch M_nu

with finitely many exceptional terms plus tail-periodic alternating series
(one series per infinite tail, each marching down the delta axis).  The
expansion is produced by a five-way dispatch on the highest weight:

  (1) typical lam:               ch L = ch M_lam - ch M_{lam^delta};
  (2) lam_0 <= m-2 (D) resp. m-1 (B): a finite double sum over chain weights
      lam^{j,q} plus one infinite alternating tail;
  (3) family D with lam_0 = m-1: as (2) but every term doubled into a plain
      and an eps_m-mirrored variant (two tails);
  (4) lam_0 >= m with lam^delta dominant: ch L_lam = ch M_lam -
      ch M_{lam^delta} + ch L_{lam^delta}, by recursion;
  (5) the rest: walk the reduction map phi down to a terminal weight whose
      delta-involution is dominant again, emitting an alternating telescope
      of M_{phi^i(lam)} - M_{phi^i(lam)^delta} pairs plus a closed tail block
      (doubled tails, or the mirrored pair when the walk ends at the
      self-dual lam_0 = m-1 wall of family D).

The branches are mutually exclusive and exhaustive; weights with
lam_0 <= m-1 are automatically atypical, typical weights automatically have
a non-dominant lam^delta.
"""

from __future__ import annotations

import json
import os
import tempfile
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Iterator

from .characters import Character, verma_character
from .weights import (
    Algebra,
    DomainError,
    Weight,
    atypical_roots,
    delta_involution,
    is_dominant_integral,
    is_orthogonal_dominant,
    is_typical,
    mirror,
    weight_sort_key,
)

__all__ = [
    "VermaSeries",
    "VermaExpansion",
    "lambda_jq",
    "phi",
    "tail_typical",
    "verma_expansion",
    "irreducible_character",
    "dimension",
    "mirror_expansion",
    "expansion_to_json",
    "expansion_from_json",
    "ExpansionCache",
]


@dataclass(frozen=True)
class VermaSeries:
    """An arithmetic progression of Verma terms with alternating signs.

    term(q) = base - (q - start_q) * step for q = start_q .. end_q (or ad
    infinitum), carrying coefficient sign_at_start * (-1)^(q-start_q) *
    magnitude.  The step always has delta-coordinate one, so materializing
    down to any cutoff takes finitely many terms.
    """

    base: Weight
    step: Weight
    start_q: int
    end_q: int | None
    sign_at_start: int
    magnitude: int

    def term(self, q: int) -> Weight:
        return self.base - (q - self.start_q) * self.step

    def coefficient(self, q: int) -> int:
        sign = -1 if (q - self.start_q) % 2 else 1
        return self.sign_at_start * sign * self.magnitude

    def terms_down_to(self, min_delta) -> Iterator[tuple[Weight, int]]:
        cutoff = Fraction(min_delta)
        q = self.start_q
        while self.end_q is None or q <= self.end_q:
            w = self.term(q)
            if w.delta_part < cutoff:
                return
            yield w, self.coefficient(q)
            q += 1

    def scaled(self, sign: int, magnitude: int) -> "VermaSeries":
        return VermaSeries(
            self.base, self.step, self.start_q, self.end_q,
            sign * self.sign_at_start, magnitude * self.magnitude,
        )

    def sort_key(self) -> tuple:
        return (weight_sort_key(self.base), weight_sort_key(self.step), self.start_q)


def _validate_series(alg: Algebra, s: VermaSeries) -> None:
    if s.magnitude <= 0 or s.sign_at_start not in (1, -1):
        raise DomainError(f"bad series coefficients in {s}")
    if s.step.delta_part <= 0:
        raise DomainError(f"series step {s.step} does not descend the delta axis")
    if s.end_q is not None:
        for w, _ in s.terms_down_to(s.term(s.end_q).delta_part):
            if not is_orthogonal_dominant(alg, w):
                raise DomainError(f"series term {w} is not o(n)-dominant")
        return
    if not is_orthogonal_dominant(alg, s.base):
        raise DomainError(f"series base {s.base} is not o(n)-dominant")
    # an infinite tail only ever grows its leading eps coordinate
    if tuple(s.step.half[1:]) != (-2,) + (0,) * (alg.m - 1):
        raise DomainError(f"unbounded series must step by delta - eps_1, got {s.step}")


@dataclass(frozen=True)
class VermaExpansion:
    """ch L_lam as finitely many Verma terms plus tail series."""

    alg: Algebra
    lam: Weight
    finite_terms: dict[Weight, int]
    tails: tuple[VermaSeries, ...]

    def __post_init__(self):
        if self.finite_terms.get(self.lam) != 1:
            raise DomainError(f"expansion of {self.lam} lost its leading coefficient")
        for w, c in self.finite_terms.items():
            if c == 0 or not is_orthogonal_dominant(self.alg, w):
                raise DomainError(f"invalid finite term {w} -> {c}")
        for s in self.tails:
            _validate_series(self.alg, s)

    def terms_down_to(self, min_delta) -> Iterator[tuple[Weight, int]]:
        cutoff = Fraction(min_delta)
        for w, c in self.finite_terms.items():
            if w.delta_part >= cutoff:
                yield w, c
        for s in self.tails:
            yield from s.terms_down_to(cutoff)


def _finite_sorted(terms: dict[Weight, int]) -> dict[Weight, int]:
    return {w: terms[w] for w in sorted(terms, key=weight_sort_key) if terms[w] != 0}


def _make_expansion(alg, lam, finite, tails) -> VermaExpansion:
    return VermaExpansion(
        alg, lam, _finite_sorted(finite), tuple(sorted(tails, key=VermaSeries.sort_key))
    )


# --------------------------------------------------------------------------
# Chain weights, the reduction map, tail-typical weights.

def lambda_jq(alg: Algebra, lam: Weight, j: int, q: int, minus: bool = False) -> Weight:
    """The block-chain weight lam^{j,q} (or its eps_m-mirrored minus variant).

    Keeps lam_1..lam_j, drops q into slot j+1, shifts the remaining entries
    lam_{j+1}..lam_{lam_0} one slot right with +1 each, and puts j-q on the
    delta axis.  The minus variant, defined only in family D at lam_0 = m-1
    where the chain fills the last eps slot, is the eps_m sign mirror of the
    plain one; anything else would leave the block of lam.
    """
    if not is_dominant_integral(alg, lam):
        raise DomainError(f"{lam} is not dominant integral")
    c = lam.int_coords()
    lam0, m = c[0], alg.m
    if lam0 > m - 1:
        raise DomainError(f"chain weights need lam_0 <= m-1, got {lam}")
    if not 0 <= j <= lam0:
        raise DomainError(f"chain index j={j} outside 0..{lam0}")
    if minus and not (alg.family == "D" and lam0 == m - 1):
        raise DomainError("the minus variant exists only in family D at lam_0 = m-1")
    eps = [0] * m
    for i in range(1, j + 1):
        eps[i - 1] = c[i]
    eps[j] = q
    for i in range(j + 1, lam0 + 1):
        eps[i] = c[i] + 1
    if minus:
        eps[m - 1] = -eps[m - 1]
    return Weight.from_coords((j - q, *eps))


def phi(alg: Algebra, lam: Weight) -> Weight | None:
    """One reduction step toward a tail-typical weight; None when undefined.

    Defined for dominant atypical lam whose atypical eps coordinate is
    nonzero.  For a (delta+eps_k)-atypical weight it subtracts one delta and
    one eps_i for every slot i = k..t of the run |lam_t| = lam_k, except that
    in family D a run ending in lam_m = -lam_k keeps its negative tail entry
    and gains an eps_m instead.  A (delta-eps_m)-atypical weight of family D
    (necessarily lam_m < 0) drops by delta - eps_m.
    """
    if not is_dominant_integral(alg, lam):
        raise DomainError(f"{lam} is not dominant integral")
    c = lam.int_coords()
    m = alg.m
    delta = alg.delta()
    result = None
    for alpha in sorted(atypical_roots(alg, lam), key=weight_sort_key):
        k = next(i for i in range(1, m + 1) if alpha.half[i] != 0)
        sign = alpha.half[k] // 2
        if sign == 1 and c[k] != 0:
            if alg.family == "D" and c[m] == -c[k]:
                shift = (m - k + 1) * delta
                for i in range(k, m):
                    shift = shift + alg.eps(i)
                step = lam - shift + alg.eps(m)
            else:
                t = max(i for i in range(k, m + 1) if abs(c[i]) == c[k])
                shift = (t - k + 1) * delta
                for i in range(k, t + 1):
                    shift = shift + alg.eps(i)
                step = lam - shift
        elif sign == -1 and k == m and alg.family == "D" and c[m] != 0:
            step = lam - delta + alg.eps(m)
        else:
            continue
        assert result is None, f"two reduction steps available at {lam}"
        result = step
    if result is not None and not is_dominant_integral(alg, result):
        raise DomainError(f"reduction of {lam} left the dominant cone: {result}")
    return result


def tail_typical(alg: Algebra, lam: Weight) -> tuple[Weight, int, list[Weight]]:
    """Iterate phi to exhaustion: returns (lam^T, theta, the full chain).

    Input must be dominant, atypical, with non-dominant lam^delta; the chain
    then has length theta >= 1 and ends at a weight whose delta-involution
    lam^T is dominant again.
    """
    if not is_dominant_integral(alg, lam):
        raise DomainError(f"{lam} is not dominant integral")
    if is_typical(alg, lam) or is_dominant_integral(alg, delta_involution(alg, lam)):
        raise DomainError(f"{lam} is not in the tail-reduction regime")
    chain = [lam]
    while (nxt := phi(alg, chain[-1])) is not None:
        chain.append(nxt)
    theta = len(chain) - 1
    assert theta >= 1, f"reduction never fired at {lam}"
    lam_t = delta_involution(alg, chain[-1])
    assert is_dominant_integral(alg, lam_t)
    return lam_t, theta, chain


# --------------------------------------------------------------------------
# The expansion itself.

def _small_delta_expansion(
    alg: Algebra, lam: Weight, doubled: bool
) -> tuple[dict[Weight, int], list[VermaSeries]]:
    """Branches (2) and (3): the finite double sum plus infinite tail(s)."""
    c = lam.int_coords()
    k = max((i for i in range(1, alg.m + 1) if c[i] != 0), default=0)
    variants = (False, True) if doubled else (False,)
    finite: dict[Weight, int] = {lam: 1}
    for j in range(1, k + 1):
        for q in range(c[j + 1] + 1, c[j] + 1):
            sign = -1 if q % 2 else 1
            for minus in variants:
                w = lambda_jq(alg, lam, j, q, minus)
                finite[w] = finite.get(w, 0) + sign
    start = c[1] + 1
    step = alg.delta() - alg.eps(1)
    sign = -1 if start % 2 else 1
    tails = [
        VermaSeries(lambda_jq(alg, lam, 0, start, minus), step, start, None, sign, 1)
        for minus in variants
    ]
    return finite, tails


_expansion_memo: dict[tuple[Algebra, Weight], VermaExpansion] = {}


def verma_expansion(alg: Algebra, lam: Weight, cache: "ExpansionCache | None" = None) -> VermaExpansion:
    """The five-branch dispatch described in the module docstring.

    Memoized per (algebra, weight); an optional on-disk cache is consulted
    before computing and fed afterwards.  Results are immutable, so a losing
    racer in concurrent use merely recomputes the same value.
    """
    if not is_dominant_integral(alg, lam):
        raise DomainError(f"{lam} is not dominant integral")
    key = (alg, lam)
    hit = _expansion_memo.get(key)
    if hit is not None:
        if cache is not None and not cache.path_for(alg, lam).exists():
            cache.store(hit)
        return hit
    if cache is not None:
        loaded = cache.load(alg, lam)
        if loaded is not None:
            _expansion_memo[key] = loaded
            return loaded

    m = alg.m
    lam0 = int(lam.delta_part)
    lam_dual = delta_involution(alg, lam)
    finite: dict[Weight, int]
    tails: list[VermaSeries]

    if is_typical(alg, lam):
        assert lam0 >= m and not is_dominant_integral(alg, lam_dual)
        finite = {lam: 1, lam_dual: -1}
        tails = []
    elif lam0 <= (m - 2 if alg.family == "D" else m - 1):
        finite, tails = _small_delta_expansion(alg, lam, doubled=False)
    elif alg.family == "D" and lam0 == m - 1:
        finite, tails = _small_delta_expansion(alg, lam, doubled=True)
    elif is_dominant_integral(alg, lam_dual):
        sub = verma_expansion(alg, lam_dual, cache)
        finite = dict(sub.finite_terms)
        finite[lam] = finite.get(lam, 0) + 1
        finite[lam_dual] = finite.get(lam_dual, 0) - 1
        tails = list(sub.tails)
    else:
        lam_t, theta, chain = tail_typical(alg, lam)
        terminal = chain[-1]
        sign = -1 if theta % 2 else 1
        finite = {}
        for i, w in enumerate(chain[:-1]):
            s = -1 if i % 2 else 1
            finite[w] = finite.get(w, 0) + s
            wd = delta_involution(alg, w)
            finite[wd] = finite.get(wd, 0) - s
        if alg.family == "D" and terminal == lam_t:
            # the walk ended on the self-dual wall: one mirrored-pair block
            sub_f, sub_t = _small_delta_expansion(alg, lam_t, doubled=True)
            for w, cc in sub_f.items():
                finite[w] = finite.get(w, 0) + sign * cc
            tails = [t.scaled(sign, 1) for t in sub_t]
        else:
            sub_f, sub_t = _small_delta_expansion(alg, lam_t, doubled=False)
            finite[lam_t] = finite.get(lam_t, 0) + sign
            finite[terminal] = finite.get(terminal, 0) + sign
            for w, cc in sub_f.items():
                if w != lam_t:
                    finite[w] = finite.get(w, 0) + 2 * sign * cc
            tails = [t.scaled(sign, 2) for t in sub_t]

    exp = _make_expansion(alg, lam, finite, tails)
    _expansion_memo[key] = exp
    if cache is not None:
        cache.store(exp)
    return exp


def irreducible_character(alg: Algebra, lam: Weight, min_delta) -> Character:
    """Evaluate the expansion to a truncated character, exact above the cutoff."""
    cutoff = Fraction(min_delta)
    exp = verma_expansion(alg, lam)
    acc = Character.zero(alg, cutoff)
    for w, c in exp.terms_down_to(cutoff):
        acc = acc + c * verma_character(alg, w, cutoff)
    return acc


def dimension(alg: Algebra, lam: Weight) -> int:
    """Total dimension: the coefficient sum of the stabilized character.

    The support of ch L_lam has delta-coordinates in [-lam_0, lam_0] (weights
    sit under lam, and the delta sign flip lies in the Weyl group), so one
    cutoff step below -lam_0 must already show an empty boundary; the retry
    loop is a safety net around that argument, not a substitute for it.
    """
    if not is_dominant_integral(alg, lam):
        raise DomainError(f"{lam} is not dominant integral")
    lam0 = lam.delta_part
    cutoff = -lam0 - 1
    for _ in range(4):
        ch = irreducible_character(alg, lam, cutoff)
        flipped = {Weight((-w.half[0], *w.half[1:])): c for w, c in ch.terms.items()}
        stable = all(w.delta_part >= -lam0 for w in ch.terms)
        if stable and flipped == ch.terms:
            return ch.coefficient_sum()
        cutoff -= 2
    raise RuntimeError(f"character of {lam} failed to stabilize; expansion bug")


def mirror_expansion(exp: VermaExpansion) -> VermaExpansion:
    """Flip the eps_m coordinate everywhere (the family D diagram symmetry)."""
    finite = {mirror(w): c for w, c in exp.finite_terms.items()}
    tails = [
        VermaSeries(mirror(s.base), mirror(s.step), s.start_q, s.end_q,
                    s.sign_at_start, s.magnitude)
        for s in exp.tails
    ]
    return _make_expansion(exp.alg, mirror(exp.lam), finite, tails)


# --------------------------------------------------------------------------
# JSON round trip and the on-disk cache.

def expansion_to_json(exp: VermaExpansion) -> dict:
    return {
        "algebra": {"family": exp.alg.family, "m": exp.alg.m},
        "lambda": exp.lam.render(),
        "finite_terms": [
            {"weight": w.render(), "coeff": str(c)}
            for w, c in sorted(exp.finite_terms.items(), key=lambda kv: weight_sort_key(kv[0]))
        ],
        "tails": [
            {
                "base": s.base.render(),
                "step": s.step.render(),
                "start_q": s.start_q,
                "end_q": s.end_q,
                "sign_at_start": s.sign_at_start,
                "magnitude": s.magnitude,
            }
            for s in exp.tails
        ],
    }


def expansion_from_json(obj: dict) -> VermaExpansion:
    alg = Algebra.make(obj["algebra"]["family"], int(obj["algebra"]["m"]))
    finite = {
        Weight.parse(entry["weight"]): int(entry["coeff"])
        for entry in obj["finite_terms"]
    }
    tails = [
        VermaSeries(
            Weight.parse(entry["base"]),
            Weight.parse(entry["step"]),
            int(entry["start_q"]),
            None if entry["end_q"] is None else int(entry["end_q"]),
            int(entry["sign_at_start"]),
            int(entry["magnitude"]),
        )
        for entry in obj["tails"]
    ]
    return _make_expansion(alg, Weight.parse(obj["lambda"]), finite, tails)


CACHE_VERSION = 1

_SLUG = str.maketrans({";": "_", ",": "-", "/": "h", "-": "n"})


class ExpansionCache:
    """One JSON file per (family, m, weight); stale versions are ignored.

    Writes go through a temporary file and an atomic rename, so concurrent
    writers can only ever race to install identical content.
    """

    def __init__(self, root: str | os.PathLike):
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)

    def path_for(self, alg: Algebra, lam: Weight) -> Path:
        slug = lam.render().translate(_SLUG)
        return self.root / f"{alg.family}{alg.m}__{slug}.json"

    def load(self, alg: Algebra, lam: Weight) -> VermaExpansion | None:
        path = self.path_for(alg, lam)
        try:
            payload = json.loads(path.read_text())
        except (OSError, ValueError):
            return None
        if not isinstance(payload, dict) or payload.get("version") != CACHE_VERSION:
            return None
        try:
            exp = expansion_from_json(payload["expansion"])
        except (KeyError, DomainError, ValueError):
            return None
        if exp.alg != alg or exp.lam != lam:
            return None
        return exp

    def store(self, exp: VermaExpansion) -> None:
        path = self.path_for(exp.alg, exp.lam)
        payload = {"version": CACHE_VERSION, "expansion": expansion_to_json(exp)}
        fd, tmp = tempfile.mkstemp(dir=self.root, suffix=".tmp")
        try:
            with os.fdopen(fd, "w") as handle:
                json.dump(payload, handle, indent=1, sort_keys=True)
            os.replace(tmp, path)
        except BaseException:
            try:
                os.unlink(tmp)
            except OSError:
                pass
            raise
