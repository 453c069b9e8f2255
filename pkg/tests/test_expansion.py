"""The Verma-flag expansion of irreducible characters and its evaluation."""

import json
from fractions import Fraction

import pytest

from ospchar import (
    Algebra,
    DomainError,
    ExpansionCache,
    VermaSeries,
    Weight,
    delta_involution,
    dimension,
    dominant_weights,
    expansion_from_json,
    expansion_to_json,
    irreducible_character,
    is_dominant_integral,
    is_typical,
    kac_typical_character,
    lambda_jq,
    mirror,
    mirror_expansion,
    natural_order,
    phi,
    same_block,
    tail_typical,
    verma_expansion,
    weyl_group,
)
from ospchar.weights import atypical_roots

D2 = Algebra.make("D", 2)
D3 = Algebra.make("D", 3)
B1 = Algebra.make("B", 1)
B2 = Algebra.make("B", 2)
ALGEBRAS = (D2, D3, B1, B2)

W = Weight.parse


def as_term_data(exp, sign=1):
    """Normal form for comparing expansions termwise: a finite-coefficient
    dict plus a tail dict keyed by (base, step, start, end) with signed
    magnitude values."""
    finite = {w: sign * c for w, c in exp.finite_terms.items()}
    tails = {}
    for s in exp.tails:
        key = (s.base, s.step, s.start_q, s.end_q)
        tails[key] = tails.get(key, 0) + sign * s.sign_at_start * s.magnitude
    return finite, {k: v for k, v in tails.items() if v}


def merge_term_data(*parts):
    finite, tails = {}, {}
    for f, t in parts:
        for w, c in f.items():
            finite[w] = finite.get(w, 0) + c
        for k, v in t.items():
            tails[k] = tails.get(k, 0) + v
    return (
        {w: c for w, c in finite.items() if c},
        {k: v for k, v in tails.items() if v},
    )


# --------------------------------------------------------------------------
# Chain weights.

def test_lambda_jq_zero_weight():
    for q in range(5):
        assert lambda_jq(D2, D2.zero(), 0, q) == Weight.from_coords((-q, q, 0))


def test_lambda_jq_recovers_lambda():
    for alg in ALGEBRAS:
        for lam in dominant_weights(alg, 4):
            lam0 = int(lam.delta_part)
            if lam0 <= alg.m - 1:
                assert lambda_jq(alg, lam, lam0, 0) == lam


def test_lambda_jq_boundary_gluing():
    # lam^{j, lam_j + 1} = lam^{j-1, lam_j}
    for alg in (D3, B2):
        for lam in dominant_weights(alg, 5):
            c = lam.int_coords()
            if c[0] > alg.m - 1:
                continue
            for j in range(1, c[0] + 1):
                assert lambda_jq(alg, lam, j, c[j] + 1) == lambda_jq(alg, lam, j - 1, c[j])


def test_lambda_jq_minus_is_mirror():
    lam = W("1;2,0")
    for j in range(0, 2):
        for q in range(0, 4):
            assert lambda_jq(D2, lam, j, q, minus=True) == mirror(lambda_jq(D2, lam, j, q))


def test_lambda_jq_errors():
    with pytest.raises(DomainError):
        lambda_jq(D2, W("1;1,0"), 2, 0)        # j out of range
    with pytest.raises(DomainError):
        lambda_jq(D2, W("2;0,0"), 0, 1)        # lam_0 too large for the chain
    with pytest.raises(DomainError):
        lambda_jq(B2, W("1;1,0"), 1, 1, minus=True)  # minus variant is D-only


# --------------------------------------------------------------------------
# The reduction map and tail-typical weights.

def test_phi_examples():
    assert phi(D2, W("2;1,1")) == W("1;1,0")
    assert phi(D2, W("2;1,-1")) == W("1;1,0")
    assert phi(D2, W("1;1,0")) is None          # atypical coordinate vanishes
    assert phi(D2, W("3;0,0")) is None          # typical
    assert phi(B2, W("3;1,1")) == W("2;1,0")
    assert phi(B2, W("5;2,0")) == W("4;1,0")
    assert phi(B2, W("4;1,0")) == W("3;0,0")
    assert phi(B1, W("2;1")) == W("1;0")


def test_phi_negative_run_case():
    # family D with the run ending at lam_m = -lam_k keeps its negative tail
    lam = W("5;1,1,-1")
    assert is_dominant_integral(D3, lam)
    assert phi(D3, lam) == W("2;0,0,0")


def test_phi_lands_in_same_block():
    for alg in ALGEBRAS:
        for lam in dominant_weights(alg, 6):
            nxt = phi(alg, lam)
            if nxt is not None:
                assert is_dominant_integral(alg, nxt)
                assert same_block(alg, lam, nxt)
                assert lam.height - nxt.height >= 2


def test_tail_typical_example():
    lam_t, theta, chain = tail_typical(D2, W("2;1,1"))
    assert (lam_t, theta) == (W("1;1,0"), 1)
    assert chain == [W("2;1,1"), W("1;1,0")]


def test_tail_typical_longer_chain():
    lam_t, theta, chain = tail_typical(D2, W("4;2,0"))
    assert theta == 2
    assert chain == [W("4;2,0"), W("3;1,0"), W("2;0,0")]
    assert lam_t == W("0;0,0")


def test_tail_typical_rejects_wrong_regime():
    with pytest.raises(DomainError):
        tail_typical(D2, W("3;0,0"))   # typical
    with pytest.raises(DomainError):
        tail_typical(D2, W("0;0,0"))   # dual stays dominant


# --------------------------------------------------------------------------
# Expansion structure.

def test_expansion_trivial_weight():
    exp = verma_expansion(D2, D2.zero())
    assert exp.finite_terms == {D2.zero(): 1}
    assert len(exp.tails) == 1
    tail = exp.tails[0]
    assert tail.base == W("-1;1,0")
    assert tail.step == W("1;-1,0")
    assert (tail.start_q, tail.end_q) == (1, None)
    assert (tail.sign_at_start, tail.magnitude) == (-1, 1)


def test_expansion_typical_two_terms():
    for alg, lam in ((D2, W("3;0,0")), (B2, W("4;0,0")), (B1, W("1;1"))):
        exp = verma_expansion(alg, lam)
        assert exp.tails == ()
        assert exp.finite_terms == {lam: 1, delta_involution(alg, lam): -1}


def test_expansion_self_dual_tail_branch():
    # hand-derived: the reduction chain of (2;1,1) ends on the self-dual wall
    exp = verma_expansion(D2, W("2;1,1"))
    assert exp.finite_terms == {W("2;1,1"): 1, W("1;1,0"): -1, W("0;1,-1"): 1}
    assert {(s.base, s.sign_at_start, s.magnitude) for s in exp.tails} == {
        (W("-2;2,2"), -1, 1),
        (W("-2;2,-2"), -1, 1),
    }


def test_expansion_doubled_tail_branch():
    # hand-derived: one reduction step, terminal dual dominant, doubled tail
    exp = verma_expansion(D2, W("3;1,0"))
    assert exp.finite_terms == {
        W("3;1,0"): 1, W("2;0,0"): -1, W("0;0,0"): -1, W("-1;1,0"): -1,
    }
    (tail,) = exp.tails
    assert (tail.base, tail.start_q, tail.sign_at_start, tail.magnitude) == (
        W("-1;1,0"), 1, 1, 2,
    )


def test_expansion_leading_coefficient_and_blocks():
    for alg in ALGEBRAS:
        for lam in dominant_weights(alg, 5):
            exp = verma_expansion(alg, lam)
            assert exp.finite_terms[lam] == 1
            for w, c in exp.terms_down_to(-7):
                assert same_block(alg, w, lam)
                assert w == lam or natural_order(alg, lam, w)


def test_expansion_rejects_non_dominant():
    with pytest.raises(DomainError):
        verma_expansion(D2, W("0;1,0"))


def test_expansion_memoized():
    a = verma_expansion(B2, W("2;1,0"))
    b = verma_expansion(B2, W("2;1,0"))
    assert a is b


def test_dual_recursion_termwise():
    # lam_0 >= m with dominant dual: expansion telescopes through lam^delta
    for alg in (D2, B2):
        for lam in dominant_weights(alg, 6):
            dual = delta_involution(alg, lam)
            if (
                lam.delta_part < alg.m
                or is_typical(alg, lam)
                or not is_dominant_integral(alg, dual)
            ):
                continue
            lhs = as_term_data(verma_expansion(alg, lam))
            head = ({lam: 1, dual: -1}, {})
            rhs = merge_term_data(head, as_term_data(verma_expansion(alg, dual)))
            assert lhs == rhs, lam


def test_tail_reduction_first_step_identity():
    # one step of the reduction: L_lam = M_lam - M_{lam^delta} - L_{phi}
    # [- L_{phi^delta} when that is dominant and different]
    for alg in (D2, B2, B1):
        for lam in dominant_weights(alg, 6):
            dual = delta_involution(alg, lam)
            if is_typical(alg, lam) or is_dominant_integral(alg, dual):
                continue
            if lam.delta_part < alg.m:
                continue
            step = phi(alg, lam)
            assert step is not None
            parts = [
                ({lam: 1, dual: -1}, {}),
                as_term_data(verma_expansion(alg, step), sign=-1),
            ]
            step_dual = delta_involution(alg, step)
            if step_dual != step and is_dominant_integral(alg, step_dual):
                parts.append(as_term_data(verma_expansion(alg, step_dual), sign=-1))
            assert as_term_data(verma_expansion(alg, lam)) == merge_term_data(*parts), lam


def test_mirror_symmetry():
    for lam in dominant_weights(D2, 5) + dominant_weights(D3, 4):
        alg = D2 if lam.m == 2 else D3
        assert verma_expansion(alg, mirror(lam)) == mirror_expansion(verma_expansion(alg, lam))


# --------------------------------------------------------------------------
# Evaluation.

def test_trivial_module_telescopes_to_one():
    for alg in ALGEBRAS:
        ch = irreducible_character(alg, alg.zero(), -6)
        assert ch.terms == {alg.zero(): 1}


def test_natural_module_characters():
    ch = irreducible_character(D2, D2.delta(), -2)
    assert ch.terms == {
        W("1;0,0"): 1, W("-1;0,0"): 1,
        W("0;1,0"): 1, W("0;-1,0"): 1, W("0;0,1"): 1, W("0;0,-1"): 1,
    }
    ch = irreducible_character(B1, B1.delta(), -2)
    assert ch.terms == {
        W("1;0"): 1, W("-1;0"): 1, W("0;1"): 1, W("0;-1"): 1, W("0;0"): 1,
    }


def test_leading_coefficient_is_one():
    for alg in (D2, B2):
        for lam in dominant_weights(alg, 4):
            assert irreducible_character(alg, lam, lam.delta_part - 1).coeff(lam) == 1


@pytest.mark.parametrize(
    "alg,expected",
    [(D2, 6), (D3, 8), (B1, 5), (B2, 7)],
)
def test_natural_module_dimension(alg, expected):
    assert dimension(alg, alg.delta()) == expected
    assert expected == alg.n + 2


def test_dimension_trivial_and_errors():
    assert dimension(D2, D2.zero()) == 1
    with pytest.raises(DomainError):
        dimension(D2, W("0;2,0"))


def test_dimension_agrees_with_closed_typical_formula():
    for alg in (D2, B2):
        for lam in dominant_weights(alg, 5):
            if not is_typical(alg, lam):
                continue
            closed = kac_typical_character(alg, lam, -lam.delta_part - 1)
            assert dimension(alg, lam) == closed.coefficient_sum()


def test_characters_positive_and_weyl_symmetric():
    for alg in (D2, B2):
        for lam in dominant_weights(alg, 4):
            ch = irreducible_character(alg, lam, -lam.delta_part - 1)
            assert all(c > 0 for c in ch.terms.values())
            for w in weyl_group(alg):
                assert all(ch.coeff(w.apply(x)) == c for x, c in ch.terms.items())


def test_truncation_consistency_of_irreducibles():
    for lam in (W("2;1,1"), W("3;1,0")):
        deep = irreducible_character(D2, lam, -8)
        assert deep.restrict(-4) == irreducible_character(D2, lam, -4)


# --------------------------------------------------------------------------
# Serialization and the on-disk cache.

def test_expansion_json_roundtrip():
    for alg, lam in ((D2, W("2;1,1")), (B2, W("3;1,1")), (B1, W("2;1"))):
        exp = verma_expansion(alg, lam)
        payload = expansion_to_json(exp)
        assert payload["lambda"] == lam.render()
        assert expansion_from_json(payload) == exp
        # the payload survives a JSON text round trip
        assert expansion_from_json(json.loads(json.dumps(payload))) == exp


def test_series_validation():
    with pytest.raises(DomainError):
        expansion_from_json(
            {
                "algebra": {"family": "D", "m": 2},
                "lambda": "0;0,0",
                "finite_terms": [{"weight": "0;0,0", "coeff": "1"}],
                "tails": [
                    {
                        "base": "-1;1,0",
                        "step": "0;1,0",  # does not descend the delta axis
                        "start_q": 1,
                        "end_q": None,
                        "sign_at_start": -1,
                        "magnitude": 1,
                    }
                ],
            }
        )
    with pytest.raises(DomainError):
        # leading coefficient must be exactly one
        expansion_from_json(
            {
                "algebra": {"family": "D", "m": 2},
                "lambda": "0;0,0",
                "finite_terms": [{"weight": "0;0,0", "coeff": "2"}],
                "tails": [],
            }
        )


def test_expansion_cache(tmp_path):
    cache = ExpansionCache(tmp_path)
    lam = W("2;1,1")
    exp = verma_expansion(D2, lam, cache=cache)
    path = cache.path_for(D2, lam)
    assert path.exists()
    assert cache.load(D2, lam) == exp

    # stale version: ignored, not trusted
    payload = json.loads(path.read_text())
    payload["version"] = 999
    path.write_text(json.dumps(payload))
    assert cache.load(D2, lam) is None

    # corrupt payload: ignored
    path.write_text("{not json")
    assert cache.load(D2, lam) is None

    # distinct weights get distinct files
    other = cache.path_for(D2, W("-2;1,1"))
    assert other != path


def test_cache_roundtrip_reproduces_expansion(tmp_path):
    cache = ExpansionCache(tmp_path)
    lam = W("4;2,0")
    exp = verma_expansion(D2, lam)
    cache.store(exp)
    loaded = cache.load(D2, lam)
    assert loaded == exp
    assert loaded.tails == exp.tails
