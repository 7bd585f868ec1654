"""Numeric identity checkers and the aggregated verification suite.

Each checker instantiates an exact counting identity from built families,
machine-checks the identity's hypotheses, then evaluates both sides with
exact integer arithmetic.  A hypothesis violation is an ``InstanceError``,
never a reported identity failure.  ``run_suite`` bundles every check into a
report with one entry per check id.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Any, Iterator

from .builders import (
    FAMILIES,
    S1T1_SHIFTED,
    build_ef,
    build_evil_odious,
    build_family,
    build_xy,
    family_progression,
)
from .intset import BoundedSet, ProgressionSpec, progression_set
from .repfn import r2_prefix, r2_profile, r2_profile_naive
from .solver import (
    STATUS_COMPLETED,
    classify_grid,
    forced_extend,
    predicted_solvable_cells,
)

__all__ = [
    "CHECK_IDS",
    "CheckResult",
    "DEFAULT_SEED",
    "FourTermInstance",
    "InstanceError",
    "PROFILES",
    "SuiteProfile",
    "SuiteReport",
    "check_four_term",
    "check_step_identity",
    "evil_odious_instances",
    "four_term_residual",
    "run_suite",
    "step_identity_residual",
    "validate_four_term",
    "window_pair_instances",
]

DEFAULT_SEED = 1729


class InstanceError(ValueError):
    """An identity instance violated its hypotheses (not an identity failure)."""


# ---------------------------------------------------------------------------
# The four-set truncated counting identity.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FourTermInstance:
    """One evaluation point of the four-set truncated counting identity.

    a/b partition their window minus the excluded set t; c/d partition [0, K]
    minus the excluded values below L; the two pairs agree below L, L itself
    is excluded and lies outside c.  The identity is evaluated at truncation
    point n and sum N with L <= n <= N <= K <= 2L.
    """

    a: BoundedSet
    b: BoundedSet
    c: BoundedSet
    d: BoundedSet
    t: BoundedSet
    L: int
    K: int
    n: int
    N: int


def validate_four_term(inst: FourTermInstance) -> None:
    """Machine-check every hypothesis; raise InstanceError on the first violation."""
    L, K, n, N = inst.L, inst.K, inst.n, inst.N
    if not 1 <= L <= K <= 2 * L:
        raise InstanceError(f"window shape needs 1 <= L <= K <= 2L, got L={L} K={K}")
    if not L <= n <= N <= K:
        raise InstanceError(f"evaluation point needs L <= n <= N <= K, got n={n} N={N}")
    a, b, c, d, t = inst.a, inst.b, inst.c, inst.d, inst.t
    if not a.bound == b.bound == t.bound:
        raise InstanceError("a, b and t must share one window")
    if a.bound < N + 1:
        raise InstanceError(f"a/b/t window must cover sums up to {N}")
    if c.bound != d.bound or c.bound < K + 1:
        raise InstanceError(f"c/d window must cover [0, {K}]")
    if t.chi(L) != 1:
        raise InstanceError(f"L={L} must be excluded")
    if c.chi(L) != 0:
        raise InstanceError(f"L={L} must lie outside c")
    if a.chi(0) != 1 or c.chi(0) != 1:
        raise InstanceError("0 must lie in a and in c")
    if b.chi(0) != 0 or d.chi(0) != 0:
        raise InstanceError("0 must lie outside b and d")
    window = (1 << a.bound) - 1
    if (a.mask & b.mask) or (a.mask & t.mask) or (b.mask & t.mask):
        raise InstanceError("a, b and the excluded set must be pairwise disjoint")
    if (a.mask | b.mask | t.mask) != window:
        raise InstanceError("a, b and the excluded set must cover the window")
    for x in range(K + 1):
        cx, dx = c.chi(x), d.chi(x)
        if cx and dx:
            raise InstanceError(f"c and d overlap at {x}")
        expected = 0 if (x < L and t.chi(x)) else 1
        if cx + dx != expected:
            raise InstanceError(f"c/d coverage wrong at {x}")
    for x in range(L):
        if a.chi(x) != c.chi(x) or b.chi(x) != d.chi(x):
            raise InstanceError(f"the pairs must agree below L, they differ at {x}")


def four_term_residual(inst: FourTermInstance) -> int:
    """Left minus right side of the identity; zero exactly when it holds."""
    a, b, c, d, t = inst.a, inst.b, inst.c, inst.d, inst.t
    L, n, N = inst.L, inst.n, inst.N
    lhs = (
        r2_prefix(a, n, N) + r2_prefix(d, n, N) - r2_prefix(b, n, N) - r2_prefix(c, n, N)
    )
    excluded_mid = [x for x in range(L, n + 1) if t.chi(x)]  # t restricted to [L, n]
    mid = set(excluded_mid)
    d_only = [x for x in range(n + 1) if d.chi(x) and not b.chi(x) and x not in mid]
    c_only = [x for x in range(n + 1) if c.chi(x) and not a.chi(x) and x not in mid]
    cross_t_d = sum(t.chi(N - x) for x in d_only)
    cross_t_c = sum(t.chi(N - x) for x in c_only)
    cross_d = sum(d.chi(N - x) for x in excluded_mid if d.chi(x))
    cross_c = sum(c.chi(N - x) for x in excluded_mid if c.chi(x))
    eps = 1 if N == 2 * L else 0
    rhs = len(d_only) - cross_t_d + cross_d - len(c_only) + cross_t_c - cross_c - eps
    return lhs - rhs


def check_four_term(inst: FourTermInstance, validate: bool = True) -> bool:
    """True iff the identity holds at the instance's evaluation point."""
    if validate:
        validate_four_term(inst)
    return four_term_residual(inst) == 0


def evil_odious_instances(spec: ProgressionSpec) -> Iterator[FourTermInstance]:
    """Instances pairing a solved partition with the evil/odious split.

    L is the first excluded value and K = 2L, so every (n, N) point of the
    identity window is emitted, including the N = 2L branch.
    """
    if spec.r < 1:
        raise InstanceError("needs an excluded progression starting above zero")
    cutoff = spec.r
    window = 2 * cutoff + 1
    out = forced_extend(spec, window)
    if out.status != STATUS_COMPLETED:
        raise InstanceError(f"no balanced partition below {window} for {spec}")
    c, d = build_evil_odious(window)
    if c.chi(cutoff):
        raise InstanceError(f"first excluded value {cutoff} is not odious")
    for n in range(cutoff, 2 * cutoff + 1):
        for N in range(n, 2 * cutoff + 1):
            yield FourTermInstance(out.a, out.b, c, d, out.excluded, cutoff, 2 * cutoff, n, N)


def window_pair_instances(
    u: int, m: int, seeds: tuple[int, ...] = (0, 1)
) -> Iterator[FourTermInstance]:
    """Instances pairing random valid partitions with the punctured-window pair.

    The excluded progression starts at 2^u and its second element L = 2^u + m
    must land in the second window set.  Below L the partition prefix is
    forced to agree with the window pair; beyond it the assignment is
    seeded-random, which the identity must tolerate.
    """
    r = 1 << u
    cutoff = r + m
    if not 2 * r + 2 <= cutoff <= 3 * r:
        raise InstanceError(f"second excluded value {cutoff} outside [2^(u+1)+2, 3*2^u]")
    c, d = build_ef(u)
    if c.chi(cutoff):
        raise InstanceError(f"second excluded value {cutoff} lies in the first window set")
    K = min(2 * cutoff, 3 * r + 1)
    width = K + 1
    t = progression_set(ProgressionSpec(r, m), width)
    for seed in seeds:
        rng = random.Random(seed)
        mask_a = mask_b = 0
        for x in range(width):
            if t.chi(x):
                continue
            side_a = c.chi(x) if x < cutoff else rng.randrange(2)
            if side_a:
                mask_a |= 1 << x
            else:
                mask_b |= 1 << x
        a = BoundedSet(width, mask_a)
        b = BoundedSet(width, mask_b)
        for n in range(cutoff, K + 1):
            for N in range(n, K + 1):
                yield FourTermInstance(a, b, c, d, t, cutoff, K, n, N)


# ---------------------------------------------------------------------------
# The digit-parity step identity.
# ---------------------------------------------------------------------------


def step_identity_residual(
    a: BoundedSet, t: BoundedSet, evil: BoundedSet, cutoff: int, n: int
) -> int:
    """lhs - rhs of the step identity at n, where cutoff is the first excluded value."""
    in_t = [x for x in range(n + 1) if t.chi(x)]
    lhs = sum(evil.chi(n - x + 1) for x in in_t)
    eps = 1 if n == 2 * cutoff - 1 else 0
    rhs = sum(evil.chi(n - x) for x in in_t) + a.chi(n + 1) - evil.chi(n + 1) - eps
    return lhs - rhs


def check_step_identity(spec: ProgressionSpec, bound: int | None = None) -> bool:
    """Solve the partition, pin the digit parity of the first excluded value,
    and check the step identity for every positive n below twice that value."""
    if spec.r < 1:
        raise InstanceError("the excluded progression must not contain 0")
    cutoff = spec.r
    needed = 2 * cutoff + 1
    if bound is None:
        bound = max(needed, spec.r + 2)
    if bound < needed:
        raise InstanceError(f"bound {bound} below the identity window {needed}")
    out = forced_extend(spec, bound)
    if out.status != STATUS_COMPLETED:
        raise InstanceError(f"no balanced partition at bound {bound} for {spec}")
    evil, _ = build_evil_odious(bound)
    if evil.chi(cutoff):
        return False  # the first excluded value must be odious
    return all(
        step_identity_residual(out.a, out.excluded, evil, cutoff, n) == 0
        for n in range(1, 2 * cutoff)
    )


# ---------------------------------------------------------------------------
# Suite.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SuiteProfile:
    name: str
    family_l_max: int
    family_bound: int
    prefix_l_max: int
    ef_u_max: int
    xy_bound: int
    grid_m_max: int
    grid_bound: int
    agreement_bound: int
    window_pair_params: tuple[tuple[int, int], ...]
    kernel_sets: int
    kernel_n_max: int


PROFILES = {
    "quick": SuiteProfile(
        name="quick",
        family_l_max=3,
        family_bound=2048,
        prefix_l_max=8,
        ef_u_max=6,
        xy_bound=2048,
        grid_m_max=9,
        grid_bound=512,
        agreement_bound=1024,
        window_pair_params=((2, 8), (3, 12)),
        kernel_sets=25,
        kernel_n_max=512,
    ),
    "full": SuiteProfile(
        name="full",
        family_l_max=6,
        family_bound=1 << 14,
        prefix_l_max=10,
        ef_u_max=8,
        xy_bound=1 << 14,
        grid_m_max=33,
        grid_bound=2048,
        agreement_bound=4096,
        window_pair_params=((2, 8), (3, 12), (3, 14), (3, 15), (4, 20), (4, 23)),
        kernel_sets=100,
        kernel_n_max=2048,
    ),
}


@dataclass
class CheckResult:
    check_id: str
    instances: int
    passed: int
    first_failure: dict[str, Any] | None = None

    @property
    def ok(self) -> bool:
        return self.passed == self.instances and self.first_failure is None


@dataclass
class SuiteReport:
    profile: str
    results: list[CheckResult]

    @property
    def all_passed(self) -> bool:
        return all(res.ok for res in self.results)

    def to_json_dict(self) -> dict[str, Any]:
        return {
            "profile": self.profile,
            "all_passed": self.all_passed,
            "checks": [
                {
                    "lemma": res.check_id,
                    "instances": res.instances,
                    "passed": res.passed,
                    "first_failure": res.first_failure,
                }
                for res in self.results
            ],
        }


def _first_profile_mismatch(
    left: BoundedSet, right: BoundedSet, n_max: int
) -> tuple[int, int, int] | None:
    pl = r2_profile(left, n_max).values
    pr = r2_profile(right, n_max).values
    for n in range(1, n_max + 1):
        if pl[n] != pr[n]:
            return n, pl[n], pr[n]
    return None


def _tally(result: CheckResult, ok: bool, failure: dict[str, Any] | None) -> None:
    result.instances += 1
    if ok:
        result.passed += 1
    elif result.first_failure is None:
        result.first_failure = failure


def _check_evil_odious_prefix(p: SuiteProfile, seed: int) -> CheckResult:
    result = CheckResult("evil-odious-prefix", 0, 0)
    for l in range(p.prefix_l_max + 1):
        bound = max(2 ** (l + 1) - 1, 1)
        evil, odious = build_evil_odious(bound)
        left = evil.truncate(2**l - 1)
        right = odious.truncate(2**l - 1)
        bad = _first_profile_mismatch(left, right, bound - 1)
        _tally(
            result,
            bad is None,
            None if bad is None else {"inputs": {"l": l, "n": bad[0]}, "lhs": bad[1], "rhs": bad[2]},
        )
    return result


def _check_family_balance(p: SuiteProfile, seed: int) -> CheckResult:
    result = CheckResult("family-balance", 0, 0)
    for family in FAMILIES:
        for l in range(p.family_l_max + 1):
            a, b, _ = build_family(family, l, p.family_bound)
            anchor = 1 if family == S1T1_SHIFTED else 0
            n_max = p.family_bound - anchor - 1
            bad = _first_profile_mismatch(a, b, n_max)
            _tally(
                result,
                bad is None,
                None
                if bad is None
                else {
                    "inputs": {"family": family, "l": l, "n": bad[0]},
                    "lhs": bad[1],
                    "rhs": bad[2],
                },
            )
    return result


def _check_family_complement(p: SuiteProfile, seed: int) -> CheckResult:
    result = CheckResult("family-complement", 0, 0)
    for family in FAMILIES:
        for l in range(p.family_l_max + 1):
            a, b, t = build_family(family, l, p.family_bound)
            failure = None
            for x in range(p.family_bound):
                cover = a.chi(x) + b.chi(x) + t.chi(x)
                if cover != 1:
                    failure = {
                        "inputs": {"family": family, "l": l, "x": x},
                        "lhs": cover,
                        "rhs": 1,
                    }
                    break
            _tally(result, failure is None, failure)
    return result


def _check_window_pair(p: SuiteProfile, seed: int) -> CheckResult:
    result = CheckResult("window-pair", 0, 0)
    for u in range(p.ef_u_max + 1):
        e, f = build_ef(u)
        bad = _first_profile_mismatch(e, f, e.bound - 1)
        _tally(
            result,
            bad is None,
            None if bad is None else {"inputs": {"u": u, "n": bad[0]}, "lhs": bad[1], "rhs": bad[2]},
        )
    return result


def _check_skip_one(p: SuiteProfile, seed: int) -> CheckResult:
    result = CheckResult("skip-one-partition", 0, 0)
    x, y = build_xy(p.xy_bound)
    hole = BoundedSet.from_elements([1], p.xy_bound)
    partition_ok = x.isdisjoint(y) and (x | y | hole) == BoundedSet.full(p.xy_bound)
    _tally(
        result,
        partition_ok,
        None
        if partition_ok
        else {"inputs": {"bound": p.xy_bound}, "lhs": len(x | y), "rhs": p.xy_bound - 1},
    )
    bad = _first_profile_mismatch(x, y, p.xy_bound - 1)
    _tally(
        result,
        bad is None,
        None if bad is None else {"inputs": {"n": bad[0]}, "lhs": bad[1], "rhs": bad[2]},
    )
    return result


def _four_term_battery(p: SuiteProfile) -> Iterator[tuple[dict[str, Any], FourTermInstance]]:
    specs = sorted(
        (r, m) for (r, m) in predicted_solvable_cells(p.grid_m_max) if r >= 1
    )
    for r, m in specs:
        for inst in evil_odious_instances(ProgressionSpec(r, m)):
            yield {"kind": "evil-odious", "r": r, "m": m, "n": inst.n, "N": inst.N}, inst
    for u, m in p.window_pair_params:
        for inst in window_pair_instances(u, m):
            yield {"kind": "window-pair", "u": u, "m": m, "n": inst.n, "N": inst.N}, inst


def _check_four_term(p: SuiteProfile, seed: int) -> CheckResult:
    result = CheckResult("four-term-identity", 0, 0)
    for inputs, inst in _four_term_battery(p):
        validate_four_term(inst)
        residual = four_term_residual(inst)
        _tally(
            result,
            residual == 0,
            {"inputs": inputs, "lhs": residual, "rhs": 0} if residual else None,
        )
    return result


def _step_identity_failure_detail(r: int, m: int) -> dict[str, Any] | None:
    spec = ProgressionSpec(r, m)
    out = forced_extend(spec, 2 * r + 1)
    evil, _ = build_evil_odious(2 * r + 1)
    if evil.chi(r):
        return {"inputs": {"r": r, "m": m, "check": "first-excluded-parity"}, "lhs": 1, "rhs": 0}
    for n in range(1, 2 * r):
        residual = step_identity_residual(out.a, out.excluded, evil, r, n)
        if residual:
            return {"inputs": {"r": r, "m": m, "n": n}, "lhs": residual, "rhs": 0}
    return None


def _check_step_identity(p: SuiteProfile, seed: int) -> CheckResult:
    result = CheckResult("step-identity", 0, 0)
    specs = sorted(
        (r, m) for (r, m) in predicted_solvable_cells(p.grid_m_max) if r >= 1
    )
    for r, m in specs:
        ok = check_step_identity(ProgressionSpec(r, m))
        _tally(result, ok, None if ok else _step_identity_failure_detail(r, m))
    return result


def _check_solver_agreement(p: SuiteProfile, seed: int) -> CheckResult:
    result = CheckResult("solver-family-agreement", 0, 0)
    for family in FAMILIES:
        l = 0
        while (1 << l) + 1 <= p.grid_m_max:
            spec = family_progression(family, l)
            out = forced_extend(spec, p.agreement_bound)
            a, b, _ = build_family(family, l, p.agreement_bound)
            ok = out.status == STATUS_COMPLETED and out.a == a and out.b == b
            _tally(
                result,
                ok,
                None
                if ok
                else {
                    "inputs": {"family": family, "l": l, "status": out.status},
                    "lhs": out.contradiction_at,
                    "rhs": None,
                },
            )
            l += 1
    return result


def _check_classification_grid(p: SuiteProfile, seed: int) -> CheckResult:
    result = CheckResult("classification-grid", 0, 0)
    predicted = predicted_solvable_cells(p.grid_m_max)
    for rec in classify_grid(p.grid_m_max, 2, p.grid_bound):
        should_complete = (rec.r, rec.m) in predicted
        if should_complete:
            ok = rec.status == STATUS_COMPLETED and rec.family is not None
        else:
            ok = rec.status != STATUS_COMPLETED
        _tally(
            result,
            ok,
            None
            if ok
            else {
                "inputs": {"r": rec.r, "m": rec.m},
                "lhs": rec.status,
                "rhs": STATUS_COMPLETED if should_complete else "contradiction",
            },
        )
    return result


def _check_kernel_oracle(p: SuiteProfile, seed: int) -> CheckResult:
    result = CheckResult("kernel-oracle", 0, 0)
    rng = random.Random(seed)
    densities = (0.02, 0.05, 0.1, 0.2, 0.35, 0.5)
    for i in range(p.kernel_sets):
        density = densities[i % len(densities)]
        bound = p.kernel_n_max + 1
        mask = 0
        for x in range(bound):
            if rng.random() < density:
                mask |= 1 << x
        s = BoundedSet(bound, mask)
        fast = list(r2_profile(s, p.kernel_n_max).values)
        slow = r2_profile_naive(s, p.kernel_n_max)
        ok = fast == slow
        failure = None
        if not ok:
            n = next(n for n in range(len(fast)) if fast[n] != slow[n])
            failure = {"inputs": {"set_index": i, "n": n}, "lhs": fast[n], "rhs": slow[n]}
        _tally(result, ok, failure)
    return result


_CHECK_FUNCTIONS = {
    "evil-odious-prefix": _check_evil_odious_prefix,
    "family-balance": _check_family_balance,
    "family-complement": _check_family_complement,
    "window-pair": _check_window_pair,
    "skip-one-partition": _check_skip_one,
    "four-term-identity": _check_four_term,
    "step-identity": _check_step_identity,
    "solver-family-agreement": _check_solver_agreement,
    "classification-grid": _check_classification_grid,
    "kernel-oracle": _check_kernel_oracle,
}

CHECK_IDS = tuple(_CHECK_FUNCTIONS)


def run_suite(
    bound_profile: str = "quick", seed: int = DEFAULT_SEED, only: str | None = None
) -> SuiteReport:
    """Run every check (or one by id) at the named profile scale."""
    if bound_profile not in PROFILES:
        raise ValueError(f"unknown profile {bound_profile!r}; choose from {sorted(PROFILES)}")
    if only is not None and only not in _CHECK_FUNCTIONS:
        raise ValueError(f"unknown check {only!r}; choose from {list(CHECK_IDS)}")
    profile = PROFILES[bound_profile]
    results = [
        fn(profile, seed)
        for check_id, fn in _CHECK_FUNCTIONS.items()
        if only is None or check_id == only
    ]
    return SuiteReport(profile=bound_profile, results=results)
