"""Root data, dominance, atypicality, blocks and orderings."""

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from ospchar import (
    Algebra,
    DomainError,
    Weight,
    atypical_roots,
    block_key,
    block_order,
    delta_involution,
    dominant_weights,
    form,
    height,
    is_dominant_integral,
    natural_order,
    positive_roots,
    rho,
    same_block,
    simple_roots,
    t_alpha,
    t_w,
    weyl_group,
)
from ospchar.weights import WeylElement, is_orthogonal_dominant, orthogonal_weyl_group

D2 = Algebra.make("D", 2)
D3 = Algebra.make("D", 3)
B1 = Algebra.make("B", 1)
B2 = Algebra.make("B", 2)
ALGEBRAS = (D2, D3, B1, B2)

W = Weight.parse


def integral_weights(alg, max_height):
    """All integral weights of bounded height (any sign pattern)."""
    m = alg.m

    def rec(pos, budget, acc):
        if pos == m + 1:
            yield Weight.from_coords(acc)
            return
        for v in range(-budget, budget + 1):
            acc.append(v)
            yield from rec(pos + 1, budget - abs(v), acc)
            acc.pop()

    yield from rec(0, max_height, [])


# --------------------------------------------------------------------------
# Roots, form, rho.

def test_positive_roots_d2_exact():
    even, odd = positive_roots(D2)
    assert odd == {W("1;-1,0"), W("1;1,0"), W("1;0,-1"), W("1;0,1")}
    assert even == {W("0;1,-1"), W("0;1,1"), W("2;0,0")}


def test_positive_roots_b1_exact():
    even, odd = positive_roots(B1)
    assert odd == {W("1;-1"), W("1;1"), W("1;0")}
    assert even == {W("0;1"), W("2;0")}


@pytest.mark.parametrize("alg", ALGEBRAS)
def test_positive_root_counts(alg):
    even, odd = positive_roots(alg)
    m = alg.m
    if alg.family == "D":
        assert len(even) == m * (m - 1) + 1
        assert len(odd) == 2 * m
    else:
        assert len(even) == m * m + 1
        assert len(odd) == 2 * m + 1


def test_simple_roots_span_positive_roots():
    # every positive root must be a nonnegative integer combination of the
    # simple system, which natural_order decides exactly
    for alg in ALGEBRAS:
        even, odd = positive_roots(alg)
        assert len(simple_roots(alg)) == alg.m + 1
        for root in even | odd:
            assert natural_order(alg, root, alg.zero())


def test_form_values():
    d, e1, e2 = D2.delta(), D2.eps(1), D2.eps(2)
    assert form(D2, d, d) == -1
    assert form(D2, e1, e2) == 0
    assert form(D2, e2, e2) == 1
    assert form(D2, d - e1, d + e1) == -2
    # symmetry and bilinearity spot checks
    x, y = W("2;1,-1"), W("-1;0,3")
    assert form(D2, x, y) == form(D2, y, x)
    assert form(D2, x + x, y) == 2 * form(D2, x, y)


def test_rho_values():
    assert rho(D2) == W("-1;1,0")
    assert rho(B1) == W("-1/2;1/2")
    assert rho(B2) == W("-3/2;3/2,1/2")
    assert rho(D3) == W("-2;2,1,0")


def test_height():
    assert height(W("0;0,0")) == 0
    assert height(W("2;1,1")) == 4
    assert height(W("-1;1,0")) == 2
    assert height(W("3/2;-1/2,1")) == 3


# --------------------------------------------------------------------------
# Dominance.

def test_dominance_examples():
    assert is_dominant_integral(D2, W("1;0,0"))
    assert not is_dominant_integral(D2, W("0;1,0"))  # lam_0 below the support
    assert is_dominant_integral(D2, W("2;1,-1"))     # negative last entry, family D
    assert not is_dominant_integral(B2, W("2;1,-1"))  # but not in family B
    assert is_dominant_integral(B2, W("2;1,1"))
    assert not is_dominant_integral(B2, W("1;1/2,0"))  # non-integral
    assert not is_dominant_integral(D2, W("3;1,2"))    # chain violated


@pytest.mark.parametrize("alg", ALGEBRAS)
def test_natural_weight_dominant(alg):
    assert is_dominant_integral(alg, alg.delta())
    assert height(alg.delta()) == 1


def test_dominant_weights_enumeration():
    for alg in (D2, B2):
        listed = dominant_weights(alg, 4)
        brute = [w for w in integral_weights(alg, 4) if is_dominant_integral(alg, w)]
        assert sorted(listed) == sorted(brute)
        assert len(set(listed)) == len(listed)


# --------------------------------------------------------------------------
# Atypicality.

def direct_atypical(alg, lam):
    """Definition unrolled by hand: roots alpha != delta with (lam+rho, alpha) = 0,
    computed from raw coordinates without the library's form()."""
    v = [Fraction(h, 2) for h in (lam + rho(alg)).half]
    hits = set()
    for i in range(1, alg.m + 1):
        for sign in (1, -1):
            # alpha = delta + sign*eps_i; (v, alpha) = -v0 + sign*vi
            if -v[0] + sign * v[i] == 0:
                hits.add(alg.delta() + sign * alg.eps(i))
    return hits


def test_atypical_roots_frozen_examples():
    assert atypical_roots(D2, W("0;0,0")) == {W("1;-1,0")}
    assert atypical_roots(D2, W("1;1,0")) == {W("1;0,1"), W("1;0,-1")}
    assert atypical_roots(B2, W("3;1,0")) == frozenset()


@pytest.mark.parametrize("alg", ALGEBRAS)
def test_atypical_roots_match_direct_evaluation(alg):
    for lam in integral_weights(alg, 4):
        assert atypical_roots(alg, lam) == direct_atypical(alg, lam)


@pytest.mark.parametrize("alg", ALGEBRAS)
def test_atypicality_degree_on_dominant_weights(alg):
    # at most one atypical root, except family D at lam_0 = m-1 where the
    # pair delta +- eps_m appears together
    for lam in dominant_weights(alg, 6):
        roots = atypical_roots(alg, lam)
        if len(roots) > 1:
            assert alg.family == "D" and lam.delta_part == alg.m - 1
            assert roots == {alg.delta() + alg.eps(alg.m), alg.delta() - alg.eps(alg.m)}
        if alg.family == "D" and lam.delta_part == alg.m - 1:
            assert len(roots) == 2


def test_shifted_weights_stay_atypical():
    # an alpha-atypical weight stays alpha-atypical one step along alpha
    for alg in (D2, B2):
        for lam in integral_weights(alg, 3):
            for alpha in atypical_roots(alg, lam):
                assert alpha in atypical_roots(alg, lam + alpha)
                assert alpha in atypical_roots(alg, lam - alpha)


# --------------------------------------------------------------------------
# Involution, translations, Weyl group.

def test_delta_involution():
    assert delta_involution(D2, W("2;0,0")) == W("0;0,0")
    assert delta_involution(D2, W("1;1,0")) == W("1;1,0")  # fixed point
    assert delta_involution(B2, W("3;1,0")) == W("0;1,0")
    for alg in ALGEBRAS:
        for lam in integral_weights(alg, 3):
            assert delta_involution(alg, delta_involution(alg, lam)) == lam


def test_t_alpha():
    zero = D2.zero()
    a = W("1;-1,0")
    assert t_alpha(D2, zero, a) == W("1;-1,0")         # 0 is (delta-eps_1)-atypical
    assert t_alpha(D2, D2.delta(), a) == D2.delta()    # delta is not
    assert t_alpha(D2, zero, -a) == W("-1;1,0")        # inverse move
    assert t_alpha(B2, W("5;0,0"), B2.delta() + B2.eps(1)) == W("5;0,0")
    with pytest.raises(DomainError):
        t_alpha(B2, B2.zero(), B2.delta())             # excluded odd root
    with pytest.raises(DomainError):
        t_alpha(D2, D2.zero(), W("0;1,1"))             # not odd


def test_t_w():
    ident = WeylElement.identity(2)
    assert t_w(D2, W("2;1,-1"), ident) == W("2;1,-1")
    flip = WeylElement(-1, (0, 1), (1, 1))
    assert t_w(D2, D2.zero(), flip) == W("2;0,0")
    for w in weyl_group(B2)[:8]:
        lam = W("1;1,0")
        # conjugating back must return: find the inverse by brute force
        image = t_w(B2, lam, w)
        assert any(t_w(B2, image, u) == lam for u in weyl_group(B2))


@pytest.mark.parametrize(
    "alg,order",
    [(D2, 8), (D3, 48), (B1, 4), (B2, 16)],
)
def test_weyl_group_order(alg, order):
    # |W| = 2 * 2^(m-1) * m! for D, 2 * 2^m * m! for B
    group = weyl_group(alg)
    assert len(group) == order
    assert len(set(group)) == order
    assert all(w.sign in (1, -1) for w in group)
    assert len(orthogonal_weyl_group(alg)) == order // 2


def test_weyl_group_closure_and_sign():
    group = weyl_group(D2)
    for a in group:
        for b in group:
            c = a.compose(b)
            assert c in group
            assert c.sign == a.sign * b.sign
            lam = W("1;2,-1")
            assert a.apply(b.apply(lam)) == c.apply(lam)


# --------------------------------------------------------------------------
# Blocks.

def test_block_examples():
    for q in range(5):
        assert same_block(D2, D2.zero(), q * (D2.eps(1) - D2.delta()))
    for alg in ALGEBRAS:
        for lam in dominant_weights(alg, 4):
            assert same_block(alg, lam, delta_involution(alg, lam))
    # the candidate constituents of a tensor with the natural module land in
    # pairwise distinct blocks for this atypical weight
    members = [W("3;1,1"), W("2;2,1"), W("2;1,0")]
    keys = {block_key(D2, mu) for mu in members}
    assert len(keys) == len(members)


def test_block_key_requires_integrality():
    with pytest.raises(DomainError):
        block_key(B2, W("1/2;0,0"))


@pytest.mark.parametrize("alg", ALGEBRAS)
def test_moves_preserve_block_key(alg):
    _, odd = positive_roots(alg)
    moves = [a for a in odd if a != alg.delta()]
    group = weyl_group(alg)
    for lam in integral_weights(alg, 3):
        key = block_key(alg, lam)
        for a in moves:
            assert block_key(alg, t_alpha(alg, lam, a)) == key
            assert block_key(alg, t_alpha(alg, lam, -a)) == key
        for w in group:
            assert block_key(alg, t_w(alg, lam, w)) == key


@pytest.mark.parametrize("alg", (D2, B2))
def test_involution_preserves_block_key_ht8(alg):
    for lam in integral_weights(alg, 8):
        assert block_key(alg, delta_involution(alg, lam)) == block_key(alg, lam)


# --------------------------------------------------------------------------
# Orders.

def test_natural_order():
    lam = W("2;1,0")
    assert natural_order(D2, lam, lam - (D2.delta() - D2.eps(1)))
    assert not natural_order(D2, lam, lam)
    assert natural_order(B1, W("2;0"), W("0;0"))
    assert natural_order(B1, W("1;0"), W("0;1"))      # difference is delta - eps_1
    assert not natural_order(B1, W("0;1"), W("1;0"))  # reverse leaves the cone
    # oracle: brute-force cone membership over all positive roots
    even, odd = positive_roots(D2)
    roots = sorted(even | odd)

    def in_cone(tau):
        if tau.height == 0:
            return True
        seen = {tau}
        frontier = [tau]
        while frontier:
            nxt = []
            for cur in frontier:
                for r in roots:
                    red = cur - r
                    if red.height == 0:
                        return True
                    ok = red.half[0] >= 0 and red.height <= cur.height + 2
                    if ok and red.height < 14 and red not in seen:
                        seen.add(red)
                        nxt.append(red)
            frontier = nxt
        return False

    for lam in integral_weights(D2, 3):
        for mu in (W("0;0,0"), W("1;1,0"), W("-1;0,1")):
            expected = lam != mu and in_cone(lam - mu)
            assert natural_order(D2, lam, mu) == expected, (lam, mu)


def test_block_order():
    assert not block_order(D2, W("1;-1,0"), W("1;-1,0"))
    assert block_order(D2, W("1;-1,0"), W("0;0,0"))
    assert not block_order(D2, W("0;0,0"), W("1;-1,0"))
    assert not block_order(D2, W("5;0,0"), W("0;0,0"))  # different blocks


# --------------------------------------------------------------------------
# Weight grammar.

def test_parse_render_examples():
    assert W("3/2;1/2,1/2").coords == (Fraction(3, 2), Fraction(1, 2), Fraction(1, 2))
    assert W(" -1 ; 1 , 0 ") == W("-1;1,0")
    assert W("-1;1,0").render() == "-1;1,0"
    assert W("3/2;1/2,-5/2").render() == "3/2;1/2,-5/2"
    with pytest.raises(DomainError):
        W("1,2,3")
    with pytest.raises(DomainError):
        W("1;2/3")


@given(st.lists(st.integers(min_value=-40, max_value=40), min_size=2, max_size=5))
def test_parse_render_roundtrip(halves):
    w = Weight(tuple(halves))
    assert Weight.parse(w.render()) == w


@given(
    st.lists(st.integers(min_value=-9, max_value=9), min_size=3, max_size=3),
    st.lists(st.integers(min_value=-9, max_value=9), min_size=3, max_size=3),
)
def test_weight_arithmetic_group_laws(a, b):
    x, y = Weight(tuple(a)), Weight(tuple(b))
    assert x + y == y + x
    assert (x + y) - y == x
    assert x + (-x) == Weight((0, 0, 0))


def test_orthogonal_dominance():
    assert is_orthogonal_dominant(D2, W("-7;2,-2"))
    assert not is_orthogonal_dominant(D2, W("0;1,2"))
    assert is_orthogonal_dominant(B2, W("0;5/2,1/2"))
    assert not is_orthogonal_dominant(B2, W("0;5/2,0"))  # mixed parity
    assert not is_orthogonal_dominant(B2, W("0;1,-1"))
