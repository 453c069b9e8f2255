"""Independent oracles: every closed formula checked against first principles.

Each check returns a :class:`VerificationReport` listing the cases run and
any failures, with enough data to reproduce a failure from the command line.
The oracles deliberately avoid the code paths they certify:

* block membership is re-decided by breadth-first search over the raw
  generating moves, never via the canonical block key;
* the typical character formula is re-derived by clearing denominators, an
  identity between two finite products that involves no Verma telescoping;
* cohomology dimensions come from binomial counting plus an explicit rank
  computation for the multiplication-by-quadric map;
* the tensor rules are compared against exact character products.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from .characters import Character, kac_typical_character, o_n_dimension
from .expansion import dimension, irreducible_character, verma_expansion
from .tensor import tensor_decompose
from .weights import (
    Algebra,
    DomainError,
    Weight,
    block_key,
    delta_involution,
    dominant_weights,
    form,
    is_dominant_integral,
    is_typical,
    positive_roots,
    rho,
    weight_sort_key,
    weyl_group,
)

__all__ = [
    "VerificationReport",
    "brute_force_block",
    "check_trivial_cohomology",
    "check_typical",
    "check_tensor_identity",
    "check_trivial_telescoping",
    "sweep_typical",
    "sweep_tensor",
    "sweep_block_keys",
    "sweep_mirror_symmetry",
    "sweep_dual_recursion",
]


@dataclass
class VerificationReport:
    """Outcome of one oracle suite; serializable, passing iff no failures."""

    suite: str
    cases: int = 0
    failures: list[dict] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def record(self, cases: int = 1) -> None:
        self.cases += cases

    def fail(self, weight: str, expected, actual, repro: str) -> None:
        self.failures.append(
            {
                "weight": weight,
                "expected": str(expected),
                "actual": str(actual),
                "repro": repro,
            }
        )

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "cases": self.cases,
            "failures": self.failures,
            "passed": self.passed,
        }

    def summary(self) -> str:
        state = "pass" if self.passed else f"FAIL ({len(self.failures)} failures)"
        return f"{self.suite}: {self.cases} cases, {state}"


# --------------------------------------------------------------------------
# Blocks by brute force.

def _dot_orbit(alg: Algebra, lam: Weight) -> list[Weight]:
    r = rho(alg)
    shifted = lam + r
    return [w.apply(shifted) - r for w in weyl_group(alg)]


def brute_force_block(alg: Algebra, lam: Weight, mu: Weight, height_bound) -> bool:
    """Decide lam ~ mu by searching words in the generating moves.

    States are canonical representatives of dot-action orbits; from each one
    we branch over lam' +- alpha for every odd root alpha with
    (lam'+rho, alpha) = 0.  Orbits whose minimal height exceeds the bound are
    pruned, so True answers are certain while False is only
    bound-relative.
    """
    if not (lam.is_integral and mu.is_integral):
        raise DomainError("block search expects integral weights")
    bound = Fraction(height_bound)
    _, odd = positive_roots(alg)
    moves = sorted(odd - {alg.delta()}, key=weight_sort_key)
    r = rho(alg)

    def canon(w: Weight) -> tuple[Weight, Fraction]:
        orbit = _dot_orbit(alg, w)
        return min(orbit), min(o.height for o in orbit)

    start, start_h = canon(lam)
    target, target_h = canon(mu)
    if start == target:
        return True
    if start_h > bound or target_h > bound:
        return False
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for state in frontier:
            shifted = state + r
            for alpha in moves:
                if form(alg, shifted, alpha) != 0:
                    continue
                for step in (alpha, -alpha):
                    rep, h = canon(state + step)
                    if rep == target:
                        return True
                    if h <= bound and rep not in seen:
                        seen.add(rep)
                        nxt.append(rep)
        frontier = nxt
    return False


def sweep_block_keys(alg: Algebra, max_height: int = 6, slack: int = 6) -> VerificationReport:
    """Pairwise agreement of the canonical key with the search oracle."""
    report = VerificationReport(f"block-keys {alg.name} ht<={max_height}")
    weights = dominant_weights(alg, max_height)
    keys = {w: block_key(alg, w) for w in weights}
    for i, lam in enumerate(weights):
        for mu in weights[i + 1 :]:
            bound = max(lam.height, mu.height) + slack
            expected = keys[lam] == keys[mu]
            actual = brute_force_block(alg, lam, mu, bound)
            report.record()
            if expected != actual:
                report.fail(
                    f"{lam} vs {mu}",
                    expected,
                    actual,
                    f"ospchar block --family {alg.family} --m {alg.m}"
                    f' --weight "{lam.render()}" --weight "{mu.render()}"',
                )
    return report


# --------------------------------------------------------------------------
# Cohomology of the nilradical with trivial coefficients.

def _binomial(n: int, k: int) -> int:
    if k < 0 or n < 0 or k > n:
        return 0
    out = 1
    for i in range(k):
        out = out * (n - i) // (i + 1)
    return out


def _monomials(nvars: int, degree: int) -> list[tuple[int, ...]]:
    if degree == 0:
        return [(0,) * nvars]
    out = []
    for comp in itertools.combinations_with_replacement(range(nvars), degree):
        mono = [0] * nvars
        for v in comp:
            mono[v] += 1
        out.append(tuple(mono))
    return out


_RANK_PRIME = 1_000_003


def _quadric_multiplication_injective(alg: Algebra, q: int) -> bool:
    """Rank of multiplication by the invariant quadric, S^{q-2} -> S^q.

    The quadric is sum_i x_{delta-eps_i} x_{delta+eps_i} (plus x_delta^2 for
    odd n).  Full rank modulo a prime certifies injectivity over the
    rationals.
    """
    m = alg.m
    nvars = 2 * m + (1 if alg.family == "B" else 0)
    # variable layout: pairs (2i, 2i+1) for delta-+eps_i, optional last for delta
    quadric: list[tuple[int, int]] = [(2 * i, 2 * i + 1) for i in range(m)]
    if alg.family == "B":
        quadric.append((nvars - 1, nvars - 1))
    source = _monomials(nvars, q - 2)
    target_index = {mono: i for i, mono in enumerate(_monomials(nvars, q))}
    columns = []
    for mono in source:
        col: dict[int, int] = {}
        for a, b in quadric:
            out = list(mono)
            out[a] += 1
            out[b] += 1
            row = target_index[tuple(out)]
            col[row] = (col.get(row, 0) + 1) % _RANK_PRIME
        columns.append(col)
    # sparse Gaussian elimination over GF(p), column by column
    pivots: dict[int, dict[int, int]] = {}
    rank = 0
    for col in columns:
        col = {r: v % _RANK_PRIME for r, v in col.items() if v % _RANK_PRIME}
        while col:
            lead = min(col)
            if lead not in pivots:
                inv = pow(col[lead], _RANK_PRIME - 2, _RANK_PRIME)
                pivots[lead] = {r: (v * inv) % _RANK_PRIME for r, v in col.items()}
                rank += 1
                break
            factor = col[lead]
            for r, v in pivots[lead].items():
                nv = (col.get(r, 0) - factor * v) % _RANK_PRIME
                if nv:
                    col[r] = nv
                else:
                    col.pop(r, None)
    return rank == len(source)


def check_trivial_cohomology(alg: Algebra, q_max: int, rank_check_max: int = 6) -> VerificationReport:
    """Cohomology of the positive nilradical acting on the trivial module.

    Degree q cochains form the degree-q part of a polynomial ring on the odd
    positive roots; coboundaries are the quadric's multiples.  The difference
    of dimensions must match the o(n) irreducible with highest weight q*eps_1,
    and for small q an explicit rank computation certifies that the quadric
    is a nonzerodivisor (which the binomial count assumes).
    """
    report = VerificationReport(f"cohomology {alg.name} q<={q_max}")
    nvars = 2 * alg.m + (1 if alg.family == "B" else 0)
    for q in range(q_max + 1):
        cocycles = _binomial(nvars + q - 1, q)
        coboundaries = _binomial(nvars + q - 3, q - 2)
        lhs = cocycles - coboundaries
        rhs = o_n_dimension(alg, Weight((0,) + (2 * q,) + (0,) * (alg.m - 1)))
        report.record()
        repro = f"ospchar verify --family {alg.family} --m {alg.m} --suite cohomology"
        if lhs != rhs:
            report.fail(f"q={q}", rhs, lhs, repro)
        if 2 <= q <= rank_check_max:
            report.record()
            if not _quadric_multiplication_injective(alg, q):
                report.fail(f"q={q} quadric rank", "injective", "rank deficient", repro)
    return report


# --------------------------------------------------------------------------
# Typical characters, three ways.

def _finite_product(alg: Algebra, factors: list[dict[Weight, int]]) -> dict[Weight, int]:
    acc = {alg.zero(): 1}
    for factor in factors:
        nxt: dict[Weight, int] = {}
        for w1, c1 in acc.items():
            for w2, c2 in factor.items():
                key = w1 + w2
                val = nxt.get(key, 0) + c1 * c2
                if val:
                    nxt[key] = val
                else:
                    nxt.pop(key, None)
        acc = nxt
    return acc


def _stabilized_finite(alg: Algebra, lam: Weight, min_delta) -> Character | None:
    """The full (finite) character of L_lam, or None if support leaks below -lam_0."""
    cutoff = min(Fraction(min_delta), -lam.delta_part - 1)
    ch = irreducible_character(alg, lam, cutoff)
    if any(w.delta_part < -lam.delta_part for w in ch.terms):
        return None
    return Character(alg, dict(ch.terms), None)


def check_typical(alg: Algebra, lam: Weight, min_delta) -> VerificationReport:
    """Certify one typical character against the denominator-cleared identity.

    Checks (i) the expansion engine agrees with ch M_lam - ch M_{lam^delta},
    and (ii) the stabilized character ch satisfies

        ch * prod_{even}(1 - e^{-alpha})
            = prod_{odd}(1 + e^{-alpha}) * sum_w sign(w) e^{w(lam+rho)-rho},

    an identity between finite exact polynomials with no division anywhere.
    """
    if not is_typical(alg, lam):
        raise DomainError(f"{lam} is atypical; nothing for the typical oracle to certify")
    report = VerificationReport(f"typical {alg.name} {lam}")
    repro = (
        f"ospchar char --family {alg.family} --m {alg.m}"
        f' --weight "{lam.render()}" --min-delta {min_delta}'
    )
    cutoff = Fraction(min_delta)
    via_expansion = irreducible_character(alg, lam, cutoff)
    via_closed = kac_typical_character(alg, lam, cutoff)
    report.record()
    if via_expansion != via_closed:
        report.fail(lam.render(), "expansion == closed form", "mismatch", repro)

    full = _stabilized_finite(alg, lam, cutoff)
    report.record()
    if full is None:
        report.fail(lam.render(), "finite support", "support below -lam_0", repro)
        return report

    even, odd = positive_roots(alg)
    lhs = _finite_product(
        alg,
        [dict(full.terms)] + [{alg.zero(): 1, -a: -1} for a in sorted(even, key=weight_sort_key)],
    )
    r = rho(alg)
    shifted = lam + r
    weyl_sum: dict[Weight, int] = {}
    for w in weyl_group(alg):
        key = w.apply(shifted) - r
        val = weyl_sum.get(key, 0) + w.sign
        if val:
            weyl_sum[key] = val
        else:
            weyl_sum.pop(key, None)
    rhs = _finite_product(
        alg,
        [weyl_sum] + [{alg.zero(): 1, -a: 1} for a in sorted(odd, key=weight_sort_key)],
    )
    report.record()
    if lhs != rhs:
        report.fail(lam.render(), "denominator-cleared identity", "mismatch", repro)
    return report


def _positive_and_symmetric(alg: Algebra, ch: Character) -> bool:
    """All coefficients nonnegative and the support invariant under every
    Weyl generator (delta sign flip; signed eps permutations per family)."""
    if any(c < 0 for c in ch.terms.values()):
        return False
    for w in weyl_group(alg):
        for wt, c in ch.terms.items():
            if ch.coeff(w.apply(wt)) != c:
                return False
    return True


def sweep_typical(alg: Algebra, max_height: int = 6) -> VerificationReport:
    """All typical dominant weights up to a height bound, plus positivity."""
    report = VerificationReport(f"typical sweep {alg.name} ht<={max_height}")
    for lam in dominant_weights(alg, max_height):
        if not is_typical(alg, lam):
            continue
        sub = check_typical(alg, lam, -lam.delta_part - 2)
        report.record(sub.cases)
        report.failures.extend(sub.failures)
        full = _stabilized_finite(alg, lam, -lam.delta_part - 2)
        report.record()
        if full is None or not _positive_and_symmetric(alg, full):
            report.fail(
                lam.render(),
                "nonnegative Weyl-symmetric character",
                "violated",
                f'ospchar char --family {alg.family} --m {alg.m} --weight "{lam.render()}"',
            )
    return report


# --------------------------------------------------------------------------
# Tensor identities.

def natural_module_character(alg: Algebra) -> Character:
    """The finite character of the natural module, fully exact."""
    full = _stabilized_finite(alg, alg.delta(), -2)
    assert full is not None
    return full


def check_tensor_identity(alg: Algebra, lam: Weight, min_delta) -> VerificationReport:
    """ch L_lam * ch L_delta versus the decomposition, coefficient by coefficient.

    Also certifies the dimension count dim(lam) * (n+2) = sum of constituent
    dimensions, an independent finite invariant of the same identity.
    """
    report = VerificationReport(f"tensor {alg.name} {lam}")
    repro = (
        f"ospchar tensor --family {alg.family} --m {alg.m}"
        f' --weight "{lam.render()}"'
    )
    cutoff = Fraction(min_delta)
    td = tensor_decompose(alg, lam)
    lhs = irreducible_character(alg, lam, cutoff).mul_finite(natural_module_character(alg))
    rhs = Character.zero(alg, lhs.min_delta)
    for mu, mult in td.constituents.items():
        rhs = rhs + mult * irreducible_character(alg, mu, lhs.min_delta)
    report.record()
    if lhs != rhs:
        report.fail(lam.render(), "character identity", "mismatch", repro)
    report.record()
    total = sum(mult * dimension(alg, mu) for mu, mult in td.constituents.items())
    expected = dimension(alg, lam) * (alg.n + 2)
    if total != expected:
        report.fail(lam.render(), expected, total, repro)
    return report


def sweep_tensor(alg: Algebra, max_height: int = 5) -> VerificationReport:
    """Tensor identity plus positivity of every stabilized character involved."""
    report = VerificationReport(f"tensor sweep {alg.name} ht<={max_height}")
    for lam in dominant_weights(alg, max_height):
        sub = check_tensor_identity(alg, lam, -lam.delta_part - 2)
        report.record(sub.cases)
        report.failures.extend(sub.failures)
        full = _stabilized_finite(alg, lam, -lam.delta_part - 2)
        report.record()
        if full is None or full.coeff(lam) != 1 or not _positive_and_symmetric(alg, full):
            report.fail(
                lam.render(),
                "nonnegative Weyl-symmetric character with leading coefficient 1",
                "violated",
                f'ospchar char --family {alg.family} --m {alg.m} --weight "{lam.render()}"',
            )
    return report


# --------------------------------------------------------------------------
# Trivial module and structural recursions.

def check_trivial_telescoping(alg: Algebra, min_delta) -> VerificationReport:
    """The expansion of the trivial weight must evaluate to the constant 1."""
    report = VerificationReport(f"telescoping {alg.name} cutoff {min_delta}")
    ch = irreducible_character(alg, alg.zero(), min_delta)
    report.record()
    if ch.terms != {alg.zero(): 1}:
        report.fail(
            "0",
            "{0: 1}",
            dict(ch.items_sorted()),
            f"ospchar char --family {alg.family} --m {alg.m} --weight"
            f' "{alg.zero().render()}" --min-delta {min_delta}',
        )
    return report


def sweep_mirror_symmetry(alg: Algebra, max_height: int = 5) -> VerificationReport:
    """Family D only: expansions commute with the eps_m sign flip."""
    from .expansion import mirror_expansion
    from .weights import mirror

    report = VerificationReport(f"mirror sweep {alg.name} ht<={max_height}")
    if alg.family != "D":
        return report
    for lam in dominant_weights(alg, max_height):
        report.record()
        direct = verma_expansion(alg, mirror(lam))
        reflected = mirror_expansion(verma_expansion(alg, lam))
        if direct != reflected:
            report.fail(
                lam.render(),
                "mirror commutes with expansion",
                "mismatch",
                f'ospchar expand --family {alg.family} --m {alg.m} --weight "{lam.render()}"',
            )
    return report


def sweep_dual_recursion(alg: Algebra, max_height: int = 6) -> VerificationReport:
    """lam_0 >= m with dominant lam^delta: the expansion is
    {lam: +1, lam^delta: -1} merged with the expansion of lam^delta."""
    report = VerificationReport(f"dual recursion {alg.name} ht<={max_height}")
    for lam in dominant_weights(alg, max_height):
        dual = delta_involution(alg, lam)
        if (
            lam.delta_part < alg.m
            or is_typical(alg, lam)
            or not is_dominant_integral(alg, dual)
        ):
            continue
        report.record()
        exp = verma_expansion(alg, lam)
        sub = verma_expansion(alg, dual)
        merged = dict(sub.finite_terms)
        merged[lam] = merged.get(lam, 0) + 1
        merged[dual] = merged.get(dual, 0) - 1
        merged = {w: c for w, c in merged.items() if c != 0}
        if exp.finite_terms != merged or exp.tails != sub.tails:
            report.fail(
                lam.render(),
                "termwise dual recursion",
                "mismatch",
                f'ospchar expand --family {alg.family} --m {alg.m} --weight "{lam.render()}"',
            )
    return report
