"""Exact capacity computation.

The capacity of an instance (W, E) is the reciprocal of the minimum total
download cost over the feasible region

    sum_t min( sum_{s in E(t)} D_{t,s},  2 * sum_{s in E(t) ^ W(k)} D_{t,s} ) >= 1
    for every stream k,  D >= 0.

Each min of two linear forms is concave, so the region is a polyhedron; the
LP below linearizes it with one epigraph variable m_{t,k} per (clique,
stream) pair with non-empty overlap (an empty overlap pins the term to 0).
Everything is exact rational arithmetic; closed forms for the fully
entangled, unentangled and symmetric families are provided and cross-checked
against the LP in the test suite.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from . import lp
from .model import Problem, ProblemError, full_clique, singleton_cliques

Rat = Fraction

MAX_LP_VARS = 10_000


class LpSizeError(ProblemError):
    """Instance exceeds the LP variable-count guard."""


@dataclass(frozen=True)
class CapacityResult:
    optimal_cost: Fraction
    capacity: Fraction
    witness: tuple[Fraction, ...]            # download costs, (t, ascending s) order
    aux: dict[tuple[int, int], Fraction]     # (t, k) -> m value at the optimum, 0-based


def feasible(P: Problem, D) -> bool:
    """Region membership of a download-cost tuple (length gamma, (t,s) order)."""
    D = [Fraction(v) for v in D]
    if len(D) != P.gamma:
        raise ProblemError(f"cost tuple length {len(D)} != gamma {P.gamma}")
    if any(v < 0 for v in D):
        return False
    # slice per clique
    per_clique = []
    pos = 0
    for e in P.E:
        servers = sorted(e)
        per_clique.append(dict(zip(servers, D[pos : pos + len(servers)])))
        pos += len(servers)
    for w in P.W:
        total = Fraction(0)
        for t, e in enumerate(P.E):
            a = sum(per_clique[t].values(), Fraction(0))
            b = 2 * sum((per_clique[t][s] for s in e & w), Fraction(0))
            total += min(a, b)
        if total >= 1:
            continue
        return False
    return True


def _active_pairs(P: Problem) -> list[tuple[int, int]]:
    return [(t, k) for t in range(P.T) for k in range(P.K) if P.E[t] & P.W[k]]


def capacity_lp(P: Problem) -> CapacityResult:
    """Exact LP solve of the capacity region; returns optimum and a witness vertex."""
    for k, w in enumerate(P.W):
        if not any(e & w for e in P.E):
            raise ProblemError(
                f"stream {P.stream_names[k]} is not covered by any clique; capacity is zero"
            )
    gamma = P.gamma
    pairs = _active_pairs(P)
    nvars = gamma + len(pairs)
    if nvars > MAX_LP_VARS:
        raise LpSizeError(f"{nvars} LP variables exceed the guard {MAX_LP_VARS}")
    # variable layout: gamma download costs then one m per active (t, k) pair
    cost_pos = {}
    pos = 0
    for t, e in enumerate(P.E):
        for s in sorted(e):
            cost_pos[(t, s)] = pos
            pos += 1
    m_pos = {pair: gamma + i for i, pair in enumerate(pairs)}

    A, b = [], []
    for (t, k) in pairs:
        e, w = P.E[t], P.W[k]
        row = [0] * nvars
        row[m_pos[(t, k)]] = 1
        for s in e:
            row[cost_pos[(t, s)]] = -1
        A.append(row)
        b.append(0)
        row = [0] * nvars
        row[m_pos[(t, k)]] = 1
        for s in e & w:
            row[cost_pos[(t, s)]] = -2
        A.append(row)
        b.append(0)
    for k in range(P.K):
        row = [0] * nvars
        for (t, kk) in pairs:
            if kk == k:
                row[m_pos[(t, kk)]] = -1
        A.append(row)
        b.append(-1)
    c = [1] * gamma + [0] * len(pairs)

    value, x = lp.solve_min(c, A, b)
    witness = tuple(x[:gamma])
    aux = {pair: x[m_pos[pair]] for pair in pairs}
    result = CapacityResult(value, 1 / value, witness, aux)
    assert feasible(P, witness), "LP witness fails region membership"
    return result


def _per_server_result(P: Problem, E, A, b) -> CapacityResult:
    """Solve a per-server-cost LP (S variables) and lift to the clique layout of E."""
    c = [1] * P.S
    value, x = lp.solve_min(c, A, b)
    lifted = Problem(P.S, P.W, E, P.stream_names, P.base_field)
    witness = tuple(x[s - 1] for t, s in lifted.cost_index())
    res = CapacityResult(value, 1 / value, witness, {})
    assert feasible(lifted, witness)
    return res


def capacity_fullent(P: Problem) -> CapacityResult:
    """Capacity when all S servers share one entangled system (only W is used).

    Per-server LP: sum_s D_s >= 1 and 2 * sum_{s in W(k)} D_s >= 1 for all k.
    """
    S = P.S
    A = [[-1] * S]
    b = [-1]
    for w in P.W:
        row = [(-2 if s in w else 0) for s in range(1, S + 1)]
        A.append(row)
        b.append(-1)
    return _per_server_result(P, full_clique(S), A, b)


def capacity_unent(P: Problem) -> CapacityResult:
    """Capacity with no entanglement (all singleton cliques; only W is used).

    Per-server LP: sum_{s in W(k)} D_s >= 1 for all k.
    """
    S = P.S
    A, b = [], []
    for w in P.W:
        A.append([(-1 if s in w else 0) for s in range(1, S + 1)])
        b.append(-1)
    return _per_server_result(P, singleton_cliques(S), A, b)


def dsc_gain(P: Problem) -> Fraction:
    """Superdense-coding gain of P's entanglement over the unentangled baseline."""
    return capacity_lp(P).capacity / capacity_unent(P).capacity


def maximal_dsc_gain(P: Problem) -> Fraction:
    """Best possible gain for the replication map: min(2, 1/C_unent).

    Computed as the ratio C_fullent / C_unent and asserted equal to the
    closed form before returning.
    """
    c_un = capacity_unent(P).capacity
    ratio = capacity_fullent(P).capacity / c_un
    closed = min(Fraction(2), 1 / c_un)
    assert ratio == closed, f"gain ratio {ratio} != closed form {closed}"
    return ratio


# ---------------------------------------------------------------------------
# symmetric family closed form


def _sym_forms(S: int, alpha: int, beta: int) -> tuple[Fraction, Fraction, Fraction]:
    T = comb(S, beta)
    denom = beta * T

    def cnt(g):
        return comb(alpha, g) * comb(S - alpha, beta - g)

    lo = max(0, alpha + beta - S)
    hi = min(alpha, beta)
    form0 = Fraction(sum(min(beta, 2 * g) * cnt(g) for g in range(lo, hi + 1)), denom)
    lo1 = max(alpha + beta - S, (beta + 1) // 2)
    form1 = Fraction(2 * alpha, S) - Fraction(
        sum((2 * g - beta) * cnt(g) for g in range(lo1, hi + 1)), denom)
    hi2 = min(alpha, beta // 2)
    form2 = 1 - Fraction(sum((beta - 2 * g) * cnt(g) for g in range(lo, hi2 + 1)), denom)
    return form0, form1, form2


def capacity_symmetric(S: int, alpha: int, beta: int) -> Fraction:
    """Capacity with every alpha-subset replicated and every beta-subset entangled.

    Three equivalent closed forms are evaluated and must agree.
    """
    if not 1 <= alpha <= S or not 1 <= beta <= S:
        raise ProblemError("alpha, beta must lie in 1..S")
    f0, f1, f2 = _sym_forms(S, alpha, beta)
    assert f0 == f1 == f2, f"closed forms disagree at (S={S}, a={alpha}, b={beta}): {f0}, {f1}, {f2}"
    return f0


def beta_star(S: int, alpha: int) -> int:
    """Smallest clique size whose symmetric capacity already equals the full-clique one."""
    if not 1 <= alpha <= S:
        raise ProblemError("alpha must lie in 1..S")
    if alpha == S:
        return 1
    if alpha <= S // 2:
        return 2 * alpha
    return 2 * (S - alpha)
