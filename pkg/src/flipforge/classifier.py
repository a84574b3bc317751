"""Decidable necessary and sufficient conditions on flip sequences.

A verdict lists every rule that fires.  Feasible verdicts name a recipe from
:mod:`flipforge.constructions` together with its parameters; the recipe with
the smallest predicted order is preferred.  All arithmetic is in integers.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb, factorial, isqrt
from typing import Sequence

from .factors import constant_partition, floor_half_bound, floor_quarter_bound

FEASIBLE = "feasible"
INFEASIBLE = "infeasible"
UNKNOWN = "unknown"

EXIT_CODES = {FEASIBLE: 0, INFEASIBLE: 2, UNKNOWN: 3}

# smaller witnesses known from the literature, distinct from the constructive bound
KNOWN_ORDER_BOUNDS = {(3, 4): 16}


class SequenceError(ValueError):
    pass


@dataclass(frozen=True)
class Rule:
    id: str
    outcome: str
    detail: str
    recipe: dict | None = None

    def to_json(self) -> dict:
        return {"id": self.id, "outcome": self.outcome, "detail": self.detail, "recipe": self.recipe}


@dataclass
class SequenceVerdict:
    sequence: tuple[int, ...]
    status: str
    rules: list[Rule] = field(default_factory=list)
    recipe: dict | None = None
    order_bound: int | None = None

    @property
    def exit_code(self) -> int:
        return EXIT_CODES[self.status]

    def fired(self, rule_id: str) -> bool:
        return any(r.id == rule_id for r in self.rules)

    def to_json(self) -> dict:
        return {
            "sequence": list(self.sequence),
            "status": self.status,
            "rules": [r.to_json() for r in self.rules],
            "recipe": self.recipe,
            "order_bound": self.order_bound,
        }


# -- two colours ------------------------------------------------------------------


def two_colour_feasible(b: int, r: int) -> bool:
    return 3 <= b < r <= comb(b + 1, 2) - 1


def _check_two_colour_range(b: int, r: int):
    if not two_colour_feasible(b, r):
        raise SequenceError(f"need 3 <= b < r <= C(b+1,2)-1, got b={b}, r={r}")


def optimal_x(b: int, r: int) -> int:
    """Largest x in 0..b with x + C(b+1-x, 2) > r, in closed form."""
    _check_two_colour_range(b, r)
    m = isqrt(1 + 8 * (r - b))
    # ceil(b - (1 + sqrt(D))/2) - 1, with floor((1 + sqrt(D))/2) == (1 + isqrt(D)) // 2
    return b - (1 + m) // 2 - 1


def h_upper_bound(b: int, r: int) -> int:
    """Constructive upper bound on the least order of a (b, r)-flip graph."""
    _check_two_colour_range(b, r)
    f = (5 + isqrt(1 + 8 * (r - b))) // 2
    return 2 * (r + b + 1 - f) * f


def rb_optimized_order(b: int, r: int, x: int) -> int:
    return 2 * (r + x) * (b + 1 - x)


# -- recipe order predictions ----------------------------------------------------------


def interval_order(b: int) -> int:
    """Order of the [b, 2b-2] interval construction."""
    return (b - 1) * (b - 2) * factorial(b + 1)


def three_flip_order(a1: int, a2: int, a3: int, x: int) -> int:
    return rb_optimized_order(a2, a3, x) * (a1 + 1)


def gap_parameters(k: int, t: int | None = None) -> tuple[int, int, int]:
    """``(n, t, rho)`` for the unbounded-gap construction; ``t`` defaults to its minimum."""
    if k < 4:
        raise SequenceError(f"unbounded-gap construction needs k >= 4, got {k}")
    n = k * (k - 1) ** 2 // (4 * (k - 3)) + 1
    t_min = -(-4 * n // (k - 1))
    if t is None:
        t = t_min
    if t < t_min:
        raise SequenceError(f"t={t} is below the required minimum ceil(4n/(k-1))={t_min} (n={n})")
    rho = (k - 1) * (2 * t + k - 2) // 2
    return n, t, rho


def gap_degrees(k: int, n: int, t: int) -> tuple[int, ...]:
    return (2 * n - 1 - comb(k - 1, 2),) + tuple((k - i) + 2 * n * (t + i - 2) for i in range(2, k + 1))


def interval_large_plan(b: int, length: int, m: int) -> list:
    """Partitions for the constant-graph factors, or ``None`` where one is missing."""
    out = []
    for j in range(1, length + 1):
        c = m - 2 * (j - 1)
        out.append(constant_partition(b + j - 1, c) if c >= 0 else None)
    return out


def interval_large_defaults(b: int) -> tuple[int, int]:
    """``(length, M)`` realising [b, b + floor((b^2 - 10 b^1.5)/4)]."""
    return floor_quarter_bound(b) + 1, floor_half_bound(b)


def interval_large_order(b: int, length: int, m: int) -> int | None:
    plan = interval_large_plan(b, length, m)
    if any(p is None for p in plan):
        return None
    out = 1
    for p in plan:
        out *= p.product_order
    return out


# -- rules ---------------------------------------------------------------------------


def _three_flip_x(a1: int, a2: int, a3: int) -> int | None:
    hi = comb(a1 + 1, 2)
    for x in range(a2, -1, -1):
        e2 = x + comb(a2 + 1 - x, 2)
        if a3 < e2 < hi:
            return x
    return None


def _gap_match(seq: tuple[int, ...]) -> tuple[int, int] | None:
    k = len(seq)
    top = seq[0] + 1 + comb(k - 1, 2)
    if top % 2:
        return None
    n = top // 2
    if 4 * (k - 3) * n <= k * (k - 1) ** 2:
        return None
    num = seq[1] - (k - 2)
    if num <= 0 or num % (2 * n):
        return None
    t = num // (2 * n)
    if t < -(-4 * n // (k - 1)):
        return None
    if gap_degrees(k, n, t) != seq:
        return None
    return n, t


def _interval_rule(seq) -> Rule | None:
    a1, ak = seq[0], seq[-1]
    if a1 < 3 or ak > 2 * a1 - 2:
        return None
    b = max(3, -(-(ak + 2) // 2))  # smallest interval start still covering a_k
    colours = [a - b + 1 for a in seq]
    recipe = {"recipe": "interval", "params": {"b": b, "colours": colours}, "predicted_order": interval_order(b)}
    return Rule("interval-subsequence", FEASIBLE,
                f"a_k={ak} <= 2*a_1-2={2 * a1 - 2}; colours {colours} of the [{b},{2 * b - 2}] interval", recipe)


def _long_interval_rule(seq) -> Rule | None:
    a1, ak = seq[0], seq[-1]
    if a1 < 101 or ak > a1 + floor_quarter_bound(a1):
        return None
    length, m = interval_large_defaults(a1)
    recipe = {"recipe": "interval-large",
              "params": {"b": a1, "length": length, "m": m, "colours": [a - a1 + 1 for a in seq]},
              "predicted_order": interval_large_order(a1, length, m)}
    return Rule("long-interval-subsequence", FEASIBLE,
                f"a_1={a1} >= 101 and a_k={ak} <= a_1 + floor((a_1^2 - 10 a_1^1.5)/4)", recipe)


def classify(seq: Sequence[int]) -> SequenceVerdict:
    seq = tuple(int(a) for a in seq)
    if len(seq) < 2:
        raise SequenceError("a flip sequence needs at least two entries")
    if seq[0] < 1 or any(a >= b for a, b in zip(seq, seq[1:])):
        raise SequenceError(f"sequence must be strictly increasing positive integers, got {list(seq)}")
    k = len(seq)
    rules: list[Rule] = []
    order_bound = None

    if k == 2:
        b, r = seq
        if two_colour_feasible(b, r):
            x = optimal_x(b, r)
            order_bound = h_upper_bound(b, r)
            rules.append(Rule("two-colour-characterisation", FEASIBLE,
                              f"3 <= b < r <= C(b+1,2)-1 = {comb(b + 1, 2) - 1}",
                              {"recipe": "rb-opt", "params": {"b": b, "r": r, "x": x},
                               "predicted_order": order_bound}))
        elif b < 3:
            rules.append(Rule("two-colour-characterisation", INFEASIBLE,
                              f"b={b} < 3; (b,r)-flip graphs need 3 <= b < r < C(b+1,2)"))
        else:
            rules.append(Rule("two-colour-characterisation", INFEASIBLE,
                              f"r={r} >= C(b+1,2)={comb(b + 1, 2)}; (b,r)-flip graphs need 3 <= b < r < C(b+1,2)"))

    if k == 3:
        a1, a2, a3 = seq
        if a3 >= 2 * a1 * a1:
            rules.append(Rule("three-colour-quadratic-bound", INFEASIBLE, f"a_3={a3} >= 2*a_1^2={2 * a1 * a1}"))
        x = _three_flip_x(a1, a2, a3)
        if x is not None:
            rules.append(Rule("three-colour-lift", FEASIBLE,
                              f"x={x}: a_3 < {x + comb(a2 + 1 - x, 2)} < C(a_1+1,2)={comb(a1 + 1, 2)}",
                              {"recipe": "three", "params": {"a1": a1, "a2": a2, "a3": a3, "x": x},
                               "predicted_order": three_flip_order(a1, a2, a3, x)}))

    if k >= 4:
        match = _gap_match(seq)
        if match is not None:
            n, t = match
            _, _, rho = gap_parameters(k, t)
            rules.append(Rule("unbounded-gap-pattern", FEASIBLE, f"matches the strong-product pattern with n={n}, t={t}",
                              {"recipe": "gap", "params": {"k": k, "t": t}, "predicted_order": 4 * n * rho}))

    for rule in (_interval_rule(seq), _long_interval_rule(seq)):
        if rule is not None:
            rules.append(rule)

    outcomes = {r.outcome for r in rules}
    if INFEASIBLE in outcomes and FEASIBLE in outcomes:
        raise AssertionError(f"rule conflict on {seq}: {[r.id for r in rules]}")
    if INFEASIBLE in outcomes:
        status = INFEASIBLE
    elif FEASIBLE in outcomes:
        status = FEASIBLE
    else:
        status = UNKNOWN
    recipe = None
    if status == FEASIBLE:
        candidates = [r.recipe for r in rules if r.recipe is not None]
        recipe = min(candidates, key=lambda rc: (rc["predicted_order"] is None, rc["predicted_order"] or 0))
    return SequenceVerdict(seq, status, rules, recipe, order_bound)


@dataclass(frozen=True)
class WeakVerdict:
    b: int
    r: int
    status: str
    reason: str
    recipe: dict | None = None

    @property
    def exit_code(self) -> int:
        return EXIT_CODES[self.status]

    def to_json(self) -> dict:
        return {"sequence": [self.b, self.r], "status": self.status, "reason": self.reason, "recipe": self.recipe}


def weak_feasibility(b: int, r: int) -> WeakVerdict:
    if not 1 <= b < r:
        raise SequenceError(f"need 1 <= b < r, got b={b}, r={r}")
    if b == 1:
        return WeakVerdict(b, r, INFEASIBLE, "no (1,r)-weak-flip graph exists")
    if r <= comb(b + 1, 2):
        recipe = {"recipe": "weak", "params": {"b": b, "r": r}, "predicted_order": 2 * r * (b + 1)}
        return WeakVerdict(b, r, FEASIBLE, f"K_{{r,r}} x K_{{b+1}} gives e_1[v]=C(b+1,2) >= r={r}", recipe)
    return WeakVerdict(b, r, UNKNOWN, "no rule applies")


def cayley_b_of_t_bound(t: int) -> int:
    if t < 2:
        raise SequenceError(f"the Cayley bound on b(t) is stated for t >= 2, got {t}")
    return 2 ** (t + 1) - 1
