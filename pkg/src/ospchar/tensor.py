"""Tensor products with the natural (n|2)-dimensional module.

The natural module has highest weight delta and character supported on
{+-delta, +-eps_i} (plus 0 when n is odd).  Tensoring a generalized Verma
module with it stays Verma-flagged: the eps part moves by the classical o(n)
one-box branching rule while the delta part moves by +-1.  On irreducibles
the candidate highest weights form the set P_lam of one-step neighbours of
lam inside the dominant cone, and the decomposition follows one of two
patterns: atypical lam gives a multiplicity-free direct sum with at most two
excluded members, typical lam gives multiplicities a_mu in {1, 2} with a
lower correction term attached to every doubled constituent.
"""

from __future__ import annotations

from dataclasses import dataclass

from .expansion import phi
from .weights import (
    Algebra,
    DomainError,
    Weight,
    atypical_roots,
    block_order,
    delta_involution,
    is_dominant_integral,
    is_orthogonal_dominant,
    weight_sort_key,
)

__all__ = [
    "TensorDecomposition",
    "o_n_pieri",
    "verma_tensor_natural",
    "p_lambda",
    "tensor_decompose",
    "tensor_to_json",
]


@dataclass(frozen=True)
class TensorDecomposition:
    """Composition factors of L_lam tensor L_delta, with multiplicities.

    ``completely_reducible`` records the structural statement (characters
    alone cannot witness indecomposability); ``a_coefficients`` holds the
    {1,2}-valued leading multiplicities of the typical case and is None in
    the atypical one.
    """

    alg: Algebra
    lam: Weight
    constituents: dict[Weight, int]
    completely_reducible: bool
    a_coefficients: dict[Weight, int] | None


def o_n_pieri(alg: Algebra, lam_o: Weight) -> frozenset[Weight]:
    """Constituents of the o(n) tensor product with the natural o(n)-module.

    Input and output are eps-part weights (delta coordinate zero).  The rule
    is lam +- eps_i filtered by dominance; for odd n the weight lam itself
    joins in exactly when lam_m != 0.
    """
    if lam_o.half[0] != 0:
        raise DomainError(f"expected an eps-part weight, got {lam_o}")
    if not is_orthogonal_dominant(alg, lam_o):
        raise DomainError(f"{lam_o} is not o(n)-dominant")
    out = set()
    for i in range(1, alg.m + 1):
        for cand in (lam_o + alg.eps(i), lam_o - alg.eps(i)):
            if is_orthogonal_dominant(alg, cand):
                out.add(cand)
    if alg.family == "B" and lam_o.half[alg.m] != 0:
        out.add(lam_o)
    return frozenset(out)


def verma_tensor_natural(alg: Algebra, lam: Weight) -> list[tuple[Weight, int]]:
    """M_lam tensor L_delta as a multiplicity-one list of Verma weights.

    Always contains lam +- delta; the rest is the one-box rule on the eps
    part, riding at the same delta level.
    """
    if not is_orthogonal_dominant(alg, lam):
        raise DomainError(f"{lam} has a non-dominant o(n) part")
    eps_part = Weight((0, *lam.half[1:]))
    lift = Weight((lam.half[0], *(0,) * alg.m))
    terms = [lam + alg.delta(), lam - alg.delta()]
    terms.extend(lift + mu for mu in o_n_pieri(alg, eps_part))
    terms.sort(key=weight_sort_key)
    return [(w, 1) for w in terms]


def p_lambda(alg: Algebra, lam: Weight) -> tuple[frozenset[Weight], frozenset[Weight]]:
    """The candidate constituents of L_lam tensor L_delta, split by height.

    P_plus collects the height-raising neighbours, P_minus the lowering
    ones, both intersected with the dominant cone.  In family D the sign of
    lam_m decides which of lam +- eps_m raises; for odd n a weight with
    lam_m != 0 belongs to both sides itself.
    """
    if not is_dominant_integral(alg, lam):
        raise DomainError(f"{lam} is not dominant integral")
    m = alg.m
    lam_m = lam.half[m] // 2
    plus: list[Weight] = [lam + alg.delta()]
    minus: list[Weight] = [lam - alg.delta()]
    plus.extend(lam + alg.eps(i) for i in range(1, m))
    minus.extend(lam - alg.eps(i) for i in range(1, m))
    if alg.family == "D":
        if lam_m >= 0:
            plus.append(lam + alg.eps(m))
        if lam_m <= 0:
            plus.append(lam - alg.eps(m))
        if lam_m > 0:
            minus.append(lam - alg.eps(m))
        if lam_m < 0:
            minus.append(lam + alg.eps(m))
    else:
        plus.append(lam + alg.eps(m))
        minus.append(lam - alg.eps(m))
        if lam_m != 0:
            plus.append(lam)
            minus.append(lam)
    keep = lambda ws: frozenset(w for w in ws if is_dominant_integral(alg, w))
    return keep(plus), keep(minus)


def tensor_decompose(alg: Algebra, lam: Weight) -> TensorDecomposition:
    """Composition factors of L_lam tensor L_delta.

    Atypical lam: the direct sum over P_lam, minus {lam-delta, lam-eps_i}
    when lam is (delta+eps_i)-atypical with lam-(delta+eps_i) dominant (and
    the eps_m-mirrored exclusion in family D); completely reducible.

    Typical lam: every mu in P_lam enters with a_mu = 2 when some other
    member of P_lam dominates it within its block (else 1), and each doubled
    mu drags in its reductions phi(mu) and phi(mu)^delta once when those are
    dominant.  Reducibility holds exactly when no doubling occurs.
    """
    if not is_dominant_integral(alg, lam):
        raise DomainError(f"{lam} is not dominant integral")
    plus, minus = p_lambda(alg, lam)
    members = plus | minus
    atypical = sorted(atypical_roots(alg, lam), key=weight_sort_key)

    if atypical:
        excluded: set[Weight] = set()
        for alpha in atypical:
            if not is_dominant_integral(alg, lam - alpha):
                continue
            k = next(i for i in range(1, alg.m + 1) if alpha.half[i] != 0)
            if alpha.half[k] > 0:
                hit = {lam - alg.delta(), lam - alg.eps(k)}
            else:
                assert alg.family == "D" and k == alg.m
                hit = {lam - alg.delta(), lam + alg.eps(alg.m)}
            assert not excluded or excluded == hit, f"two exclusion rules at {lam}"
            excluded = hit
        constituents = {w: 1 for w in members - excluded}
        return TensorDecomposition(alg, lam, constituents, True, None)

    # Odd n only: at lam_0 = (n-1)/2 the Verma self-term of lam cancels against
    # M_{lam^delta + delta} = M_lam, and a typical block holds no second
    # dominant weight to regenerate L_lam, so lam leaves its own candidate set.
    if lam in members and 2 * lam.delta_part == alg.n - 1:
        members = members - {lam}
    a = {
        mu: 2 if any(block_order(alg, other, mu) for other in members - {mu}) else 1
        for mu in members
    }
    doubled = [mu for mu, val in a.items() if val == 2]
    assert len(doubled) <= 2, f"more than two doubled constituents at {lam}"
    constituents = dict(a)

    def bump(w: Weight) -> None:
        constituents[w] = constituents.get(w, 0) + 1

    for mu in doubled:
        corr = phi(alg, mu)
        if corr is None:
            continue
        bump(corr)
        corr_dual = delta_involution(alg, corr)
        if corr_dual != corr and is_dominant_integral(alg, corr_dual):
            bump(corr_dual)
    return TensorDecomposition(alg, lam, constituents, not doubled, a)


def tensor_to_json(td: TensorDecomposition) -> dict:
    payload = {
        "algebra": {"family": td.alg.family, "m": td.alg.m},
        "lambda": td.lam.render(),
        "constituents": [
            {"weight": w.render(), "multiplicity": str(c)}
            for w, c in sorted(td.constituents.items(), key=lambda kv: weight_sort_key(kv[0]))
        ],
        "completely_reducible": td.completely_reducible,
        "a_coefficients": None,
    }
    if td.a_coefficients is not None:
        payload["a_coefficients"] = [
            {"weight": w.render(), "a": c}
            for w, c in sorted(td.a_coefficients.items(), key=lambda kv: weight_sort_key(kv[0]))
        ]
    return payload
