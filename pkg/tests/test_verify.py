"""Identity checkers: valid instances pass, hypothesis violations are rejected,
single-element mutations flip the verdict."""

import pytest

from repbal.builders import build_ef, build_evil_odious
from repbal.intset import BoundedSet, ProgressionSpec, progression_set
from repbal.solver import forced_extend
from repbal.verify import (
    CHECK_IDS,
    FourTermInstance,
    InstanceError,
    check_four_term,
    check_step_identity,
    evil_odious_instances,
    four_term_residual,
    run_suite,
    step_identity_residual,
    validate_four_term,
    window_pair_instances,
)


def base_instance(n=3, N=4):
    """The (r=2, m=3) partition paired with the evil/odious split on [0, 5)."""
    out = forced_extend(ProgressionSpec(2, 3), 5)
    evil, odious = build_evil_odious(5)
    return FourTermInstance(out.a, out.b, evil, odious, out.excluded, L=2, K=4, n=n, N=N)


class TestFourTerm:
    def test_base_instance_holds(self):
        assert check_four_term(base_instance()) is True

    def test_epsilon_branch_at_doubled_cutoff(self):
        inst = base_instance(n=4, N=4)  # N = 2L
        assert four_term_residual(inst) == 0

    def test_every_point_of_the_evil_odious_battery(self):
        for r, m in [(2, 3), (1, 3), (4, 5), (2, 5), (8, 9)]:
            for inst in evil_odious_instances(ProgressionSpec(r, m)):
                validate_four_term(inst)
                assert four_term_residual(inst) == 0, (r, m, inst.n, inst.N)

    def test_window_pair_battery(self):
        saw_points = 0
        for u, m in [(2, 8), (3, 12), (3, 14)]:
            for inst in window_pair_instances(u, m, seeds=(0, 1, 2)):
                validate_four_term(inst)
                assert four_term_residual(inst) == 0, (u, m, inst.n, inst.N)
                saw_points += 1
        assert saw_points > 0

    def test_mutation_flips_the_verdict(self):
        # dropping 4 from the second finite set breaks the identity at (n, N) = (4, 4)
        inst = base_instance(n=4, N=4)
        mutated = FourTermInstance(
            inst.a, inst.b, inst.c,
            BoundedSet(inst.d.bound, inst.d.mask ^ (1 << 4)),
            inst.t, inst.L, inst.K, inst.n, inst.N,
        )
        assert four_term_residual(mutated) == 1
        assert check_four_term(mutated, validate=False) is False

    def test_mutation_is_caught_by_validation(self):
        inst = base_instance(n=4, N=4)
        mutated = FourTermInstance(
            inst.a, inst.b, inst.c,
            BoundedSet(inst.d.bound, inst.d.mask ^ (1 << 4)),
            inst.t, inst.L, inst.K, inst.n, inst.N,
        )
        with pytest.raises(InstanceError):
            check_four_term(mutated)

    def test_bad_window_shape_rejected(self):
        inst = base_instance()
        bad = FourTermInstance(inst.a, inst.b, inst.c, inst.d, inst.t, L=2, K=5, n=3, N=4)
        with pytest.raises(InstanceError):
            validate_four_term(bad)

    def test_bad_evaluation_point_rejected(self):
        inst = base_instance()
        bad = FourTermInstance(inst.a, inst.b, inst.c, inst.d, inst.t, L=2, K=4, n=1, N=4)
        with pytest.raises(InstanceError):
            validate_four_term(bad)

    def test_window_pair_rejects_wrong_second_excluded_value(self):
        # u=2: L = 4 + 6 = 10 lies in the first window set
        with pytest.raises(InstanceError):
            list(window_pair_instances(2, 6))

    def test_unsolvable_spec_rejected(self):
        with pytest.raises(InstanceError):
            list(evil_odious_instances(ProgressionSpec(3, 2)))


class TestStepIdentity:
    @pytest.mark.parametrize("r,m", [(2, 3), (4, 5), (1, 2), (1, 3), (8, 9), (2, 5)])
    def test_holds_on_solved_partitions(self, r, m):
        assert check_step_identity(ProgressionSpec(r, m)) is True

    def test_epsilon_branch_is_reached(self):
        # n = 2r - 1 = 7 sits inside the checked range for (4, 5)
        spec = ProgressionSpec(4, 5)
        out = forced_extend(spec, 9)
        evil, _ = build_evil_odious(9)
        assert step_identity_residual(out.a, out.excluded, evil, 4, 7) == 0

    def test_smallest_window(self):
        # r = 1 checks only n = 1
        assert check_step_identity(ProgressionSpec(1, 2)) is True

    def test_mutation_flips_the_verdict(self):
        spec = ProgressionSpec(2, 3)
        out = forced_extend(spec, 5)
        evil, _ = build_evil_odious(5)
        mutated = BoundedSet(5, evil.mask ^ (1 << 3))  # flip the parity bit of 3
        assert step_identity_residual(out.a, out.excluded, mutated, 2, 2) == -1

    def test_zero_offset_rejected(self):
        with pytest.raises(InstanceError):
            check_step_identity(ProgressionSpec(0, 3))

    def test_contradictory_spec_rejected(self):
        # (1, 4) dies at sum 5; a window that reaches it must be refused
        with pytest.raises(InstanceError):
            check_step_identity(ProgressionSpec(1, 4), bound=64)

    def test_undersized_bound_rejected(self):
        with pytest.raises(InstanceError):
            check_step_identity(ProgressionSpec(4, 5), bound=7)


class TestSuite:
    def test_quick_profile_all_pass(self):
        report = run_suite("quick")
        assert report.all_passed
        assert [res.check_id for res in report.results] == list(CHECK_IDS)
        assert all(res.passed == res.instances for res in report.results)

    def test_single_check_selection(self):
        report = run_suite("quick", only="skip-one-partition")
        assert [res.check_id for res in report.results] == ["skip-one-partition"]
        assert report.all_passed

    def test_json_shape(self):
        report = run_suite("quick", only="evil-odious-prefix")
        payload = report.to_json_dict()
        assert payload["all_passed"] is True
        entry = payload["checks"][0]
        assert set(entry) == {"lemma", "instances", "passed", "first_failure"}

    def test_unknown_profile_rejected(self):
        with pytest.raises(ValueError):
            run_suite("huge")

    def test_unknown_check_rejected(self):
        with pytest.raises(ValueError):
            run_suite("quick", only="nope")


class TestInstanceGeneratorsRespectWindows:
    def test_evil_odious_instances_include_the_epsilon_point(self):
        points = [(inst.n, inst.N) for inst in evil_odious_instances(ProgressionSpec(2, 3))]
        assert (4, 4) in points  # N = 2L
        assert (2, 2) in points

    def test_window_pair_prefix_agreement(self):
        e, _ = build_ef(2)
        for inst in window_pair_instances(2, 8, seeds=(0,)):
            for x in range(inst.L):
                assert inst.a.chi(x) == inst.c.chi(x)
            t = progression_set(ProgressionSpec(4, 8), inst.t.bound)
            assert inst.t == t
            break
