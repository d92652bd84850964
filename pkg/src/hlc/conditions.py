"""Log-domain evaluation of the coloring sufficient conditions.

Everything is computed with natural logs and compensated log1p/expm1
primitives: the interesting parameter regimes push terms like
(1 - (1 - 1/q^{k-1})^D)^q far below double-precision underflow, so the
raw formulas are never evaluated directly. Ties (margin exactly 0) count
as satisfied; the inequalities are non-strict.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .errors import InvalidInputError

_LN2 = math.log(2.0)


@dataclass(frozen=True)
class ParamVector:
    """Inputs shared by every condition evaluator.

    k parts, distinguished part j in [0,k); q holds per-part list sizes,
    D per-part color-degree caps, Delta per-part degree caps. Entries may
    be non-integral (the corollary reductions construct real-valued list
    sizes). eps rides along for threshold formulas that need it.
    """
    k: int
    j: int
    q: tuple
    D: tuple = ()
    Delta: tuple = ()
    eps: float | None = None

    def __post_init__(self):
        if self.k < 2:
            raise InvalidInputError(f"k={self.k} < 2")
        if not 0 <= self.j < self.k:
            raise InvalidInputError(f"j={self.j} out of range [0,{self.k})")
        for name, arr in (("q", self.q), ("D", self.D), ("Delta", self.Delta)):
            if arr and len(arr) != self.k:
                raise InvalidInputError(f"{name} has {len(arr)} entries, expected {self.k}")

    def others(self) -> list[int]:
        return [i for i in range(self.k) if i != self.j]


@dataclass(frozen=True)
class ConditionVerdict:
    """Outcome of one inequality, normalized to "lhs <= rhs" form.

    margin = rhs_log - lhs_log, so satisfied == (margin >= 0) always,
    whichever direction the paper states the inequality in.
    """
    condition: str
    satisfied: bool
    lhs_log: float
    rhs_log: float

    @property
    def margin(self) -> float:
        return self.rhs_log - self.lhs_log


@dataclass(frozen=True)
class LLLParams:
    p: float
    d_lll: int

    def premise_holds(self) -> bool:
        return lll_premise(self.p, self.d_lll)


def _require_positive(pv: ParamVector, *, q=False, D=False, Delta=False) -> None:
    checks = []
    if q:
        checks.append(("q", pv.q))
    if D:
        checks.append(("D", pv.D))
    if Delta:
        checks.append(("Delta", pv.Delta))
    for name, arr in checks:
        if not arr:
            raise InvalidInputError(f"condition needs {name} values")
        for i, x in enumerate(arr):
            if not x > 0:
                raise InvalidInputError(f"{name}[{i}]={x} must be positive")


def _log1mexp(a: float) -> float:
    """log(1 - exp(a)) for a <= 0, stable near both ends."""
    if a > 0:
        raise ValueError(f"log1mexp needs a <= 0, got {a}")
    if a == 0.0:
        return -math.inf
    if a == -math.inf:
        return 0.0
    if a > -_LN2:
        return math.log(-math.expm1(a))
    return math.log1p(-math.exp(a))


def _log_outer_base(t: float, sum_log_q: float) -> float:
    """log(1 - (1-r)^t) with r = exp(-sum_log_q), the shared inner kernel.

    t == 0 gives base 0 (x^0 = 1 even for x = 0); sum_log_q == 0 (all
    remote lists of size 1) gives base 1. When t*r underflows, falls back
    to the first-order value log(t) - sum_log_q.
    """
    if t < 0:
        raise InvalidInputError(f"negative exponent {t}")
    if t == 0:
        return -math.inf
    if sum_log_q == 0.0:
        return 0.0
    a = t * math.log1p(-math.exp(-sum_log_q))
    if a == 0.0:
        return math.log(t) - sum_log_q
    return _log1mexp(a)


def eval_c1(pv: ParamVector) -> ConditionVerdict:
    """Product-of-list-sizes condition (the correspondence-safe one).

    prod_{i != j} q_i >= D_j * (e * q_j * sum_{i != j} q_i D_i / D_j)^(1/q_j),
    normalized so the threshold is the lhs.
    """
    _require_positive(pv, q=True, D=True)
    j = pv.j
    sum_log_q = sum(math.log(pv.q[i]) for i in pv.others())
    weight = sum(pv.q[i] * pv.D[i] for i in pv.others())
    threshold_log = math.log(pv.D[j]) + (
        1.0 + math.log(pv.q[j]) + math.log(weight) - math.log(pv.D[j])) / pv.q[j]
    return ConditionVerdict("c1", sum_log_q >= threshold_log,
                            threshold_log, sum_log_q)


def eval_c2(pv: ParamVector) -> ConditionVerdict:
    """Color-degree condition:
    e*(q_j D_j (sum_{i!=j} q_i D_i - 1) + 1)*(1 - (1 - prod q_i^-1)^(D_j))^(q_j) <= 1.
    """
    _require_positive(pv, q=True, D=True)
    j = pv.j
    sum_log_q = sum(math.log(pv.q[i]) for i in pv.others())
    weight = sum(pv.q[i] * pv.D[i] for i in pv.others())
    # degenerate D combinations can push the event count below 1; clamp
    count = pv.q[j] * pv.D[j] * max(weight - 1.0, 0.0) + 1.0
    lhs_log = 1.0 + math.log(count) + pv.q[j] * _log_outer_base(pv.D[j], sum_log_q)
    return ConditionVerdict("c2", lhs_log <= 0.0, lhs_log, 0.0)


def eval_c3(pv: ParamVector) -> ConditionVerdict:
    """Max-degree condition:
    e*(Delta_j (sum_{i!=j} Delta_i - 1) + 1)
      *(1 - (1 - prod q_i^-1)^(Delta_j min_i q_i / q_j))^(q_j) <= 1.
    """
    _require_positive(pv, q=True, Delta=True)
    j = pv.j
    sum_log_q = sum(math.log(pv.q[i]) for i in pv.others())
    sum_delta = sum(pv.Delta[i] for i in pv.others())
    t = pv.Delta[j] * min(pv.q) / pv.q[j]
    count = pv.Delta[j] * max(sum_delta - 1.0, 0.0) + 1.0
    lhs_log = 1.0 + math.log(count) + pv.q[j] * _log_outer_base(t, sum_log_q)
    return ConditionVerdict("c3", lhs_log <= 0.0, lhs_log, 0.0)


ALL_CONDITIONS = {"c1": eval_c1, "c2": eval_c2, "c3": eval_c3}


def main_theorem_list_size(k: int, eps: float, Delta: float) -> int:
    """ceil(((k-1+eps) * Delta / ln Delta)^(1/(k-1))).

    Refuses Delta < 3: the statement is asymptotic and ln Delta <= 1
    leaves it meaningless.
    """
    if k < 2:
        raise InvalidInputError(f"k={k} < 2")
    if eps <= 0:
        raise InvalidInputError(f"eps={eps} must be positive")
    if Delta < 3:
        raise InvalidInputError(f"Delta={Delta} < 3 is outside the formula's regime")
    value = ((k - 1 + eps) * Delta / math.log(Delta)) ** (1.0 / (k - 1))
    return math.ceil(value)


def lll_premise(p: float, d: int) -> bool:
    """Symmetric local-lemma premise e*p*(d+1) <= 1, evaluated in log domain."""
    if not 0 <= p < 1:
        raise InvalidInputError(f"p={p} outside [0,1)")
    if d < 0:
        raise InvalidInputError(f"d={d} negative")
    if p == 0:
        return True
    return 1.0 + math.log(p) + math.log(d + 1) <= 0.0


def lemma_41_log(pv: ParamVector, s: float) -> float:
    """log of the empty-residual bound (1 - (1-r)^(s/q_j))^(q_j)."""
    _require_positive(pv, q=True)
    if s < 0:
        raise InvalidInputError(f"color-degree sum s={s} negative")
    sum_log_q = sum(math.log(pv.q[i]) for i in pv.others())
    return pv.q[pv.j] * _log_outer_base(s / pv.q[pv.j], sum_log_q)


def lemma_41_bound(pv: ParamVector, s: float) -> float:
    """P[residual of a part-j vertex is empty] <= this, where s = sum_c deg(v,c)."""
    return math.exp(lemma_41_log(pv, s))


def claim_31_log(pv: ParamVector, d: float) -> float:
    """log of the single-color blocking bound 1 - (1-r)^d."""
    _require_positive(pv, q=True)
    if d < 0:
        raise InvalidInputError(f"color degree d={d} negative")
    sum_log_q = sum(math.log(pv.q[i]) for i in pv.others())
    return _log_outer_base(d, sum_log_q)


def claim_31_bound(pv: ParamVector, d: float) -> float:
    """P[a fixed list color is blocked at v] <= this, where d = deg(v,c)."""
    return math.exp(claim_31_log(pv, d))


def lll_params_for(pv: ParamVector, condition: str) -> LLLParams:
    """The (p, d_lll) pair each condition feeds to the local lemma.

    Only meaningful at scales where p does not underflow; used by tests
    and reporting, never by the solver loop.
    """
    j = pv.j
    sum_log_q = sum(math.log(pv.q[i]) for i in pv.others())
    if condition == "c1":
        _require_positive(pv, q=True, D=True)
        weight = sum(pv.q[i] * pv.D[i] for i in pv.others())
        p = math.exp(-pv.q[j] * sum_log_q)
        d = round(pv.q[j] * pv.D[j] ** (pv.q[j] - 1) * weight) - 1
    elif condition == "c2":
        _require_positive(pv, q=True, D=True)
        weight = sum(pv.q[i] * pv.D[i] for i in pv.others())
        p = math.exp(pv.q[j] * _log_outer_base(pv.D[j], sum_log_q))
        d = round(pv.q[j] * pv.D[j] * (weight - 1))
    elif condition == "c3":
        _require_positive(pv, q=True, Delta=True)
        t = pv.Delta[j] * min(pv.q) / pv.q[j]
        p = math.exp(pv.q[j] * _log_outer_base(t, sum_log_q))
        d = round(pv.Delta[j] * (sum(pv.Delta[i] for i in pv.others()) - 1))
    else:
        raise InvalidInputError(f"unknown condition {condition!r}")
    return LLLParams(p, max(d, 0))


@dataclass(frozen=True)
class CorollaryReport:
    corollary: str
    satisfied: bool
    premises_ok: bool
    case: str
    witness: ConditionVerdict | None
    params: ParamVector | None

    @property
    def condition(self) -> str | None:
        return self.witness.condition if self.witness else None


def check_corollary_15(pv: ParamVector, eps: float) -> CorollaryReport:
    """Unbalanced color-degree corollary: lists of size D_i^(eps/(k-1)).

    Premises: D_k >= (8(k-1)/eps)^(1/eps) and
    prod_{i<k} D_i >= D_k^(2(k-1)/eps). On success the witness is the c1
    verdict for q_i = D_i^(eps/(k-1)) with part k distinguished.
    """
    _require_positive(pv, D=True)
    if eps <= 0:
        raise InvalidInputError(f"eps={eps} must be positive")
    k = pv.k
    D = pv.D
    size_floor = (8 * (k - 1) / eps) ** (1 / eps)
    geo_ok = sum(math.log(D[i]) for i in range(k - 1)) >= \
        (2 * (k - 1) / eps) * math.log(D[k - 1])
    if D[k - 1] < size_floor or not geo_ok:
        return CorollaryReport("1.5", False, False, "premises fail", None, None)
    q = tuple(D[i] ** (eps / (k - 1)) for i in range(k))
    built = ParamVector(k, k - 1, q, D, pv.Delta, eps)
    verdict = eval_c1(built)
    return CorollaryReport("1.5", verdict.satisfied, True, "c1", verdict, built)


def corollary_16_base(k: int) -> float:
    """The logarithm base b = (2^(k-1) / (2^(k-1) - 1))^k."""
    if k < 2:
        raise InvalidInputError(f"k={k} < 2")
    half = 2.0 ** (k - 1)
    return (half / (half - 1.0)) ** k


def check_corollary_16(k: int, eps: float, Delta: float, variant: int) -> CorollaryReport:
    """Small-list corollary. Variant 1: lists of size 2 outside part k and
    ((2+eps)/k) * Delta / log_b Delta inside; variant 2: lists of size
    ln Delta outside and (1+eps) * Delta / (ln Delta)^(k-1) inside.
    Returns the c3 verdict at the constructed list sizes.
    """
    if eps <= 0:
        raise InvalidInputError(f"eps={eps} must be positive")
    if Delta < 3:
        raise InvalidInputError(f"Delta={Delta} < 3")
    if variant == 1:
        b = corollary_16_base(k)
        q_last = (2 + eps) / k * Delta / (math.log(Delta) / math.log(b))
        q = (2.0,) * (k - 1) + (q_last,)
    elif variant == 2:
        q_last = (1 + eps) * Delta / math.log(Delta) ** (k - 1)
        q = (math.log(Delta),) * (k - 1) + (q_last,)
    else:
        raise InvalidInputError(f"variant must be 1 or 2, got {variant}")
    if q_last < 1:
        raise InvalidInputError(
            f"Delta={Delta} too small: constructed part-k list size {q_last:.3g} < 1")
    built = ParamVector(k, k - 1, q, (), (float(Delta),) * k, eps)
    verdict = eval_c3(built)
    return CorollaryReport("1.6", verdict.satisfied, True, f"variant {variant}",
                           verdict, built)


def check_corollary_17(pv: ParamVector, eps: float) -> CorollaryReport:
    """Asymmetric main bound: lists of size ((k-1+eps) D_i / ln D_i)^(1/(k-1)).

    Parts are permuted so the smallest D sits last, then the case split
    at prod_{i<k} D_i >= D_k^(2(k-1)) picks between the corollary-1.5
    route (c1 witness) and the direct c2 route.
    """
    _require_positive(pv, D=True)
    if eps <= 0:
        raise InvalidInputError(f"eps={eps} must be positive")
    k = pv.k
    order = sorted(range(k), key=lambda i: (pv.D[i] == min(pv.D), i))
    D = tuple(pv.D[i] for i in order)
    # the proof's threshold is eps-independent
    case1 = sum(math.log(D[i]) for i in range(k - 1)) >= \
        2 * (k - 1) * math.log(D[k - 1])
    if case1:
        inner = check_corollary_15(ParamVector(k, k - 1, (), D), eps)
        return CorollaryReport("1.7", inner.satisfied, inner.premises_ok,
                               "case 1 (via corollary 1.5)", inner.witness, inner.params)
    q = tuple(((k - 1 + eps) * D[i] / math.log(D[i])) ** (1 / (k - 1)) for i in range(k))
    built = ParamVector(k, k - 1, q, D, pv.Delta, eps)
    verdict = eval_c2(built)
    return CorollaryReport("1.7", verdict.satisfied, True, "case 2", verdict, built)
