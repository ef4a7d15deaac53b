import math

import pytest

from eqthink.cost import (
    CANDIDATES,
    Recurrence,
    check_bound,
    check_recurrence,
    emit_csv,
    measure_steps,
    random_list,
    reverse_sorted_list,
    unfold,
)
from eqthink.values import to_list


def test_candidate_shapes():
    assert CANDIDATES["n"](8) == 8.0
    assert CANDIDATES["nlogn"](8) == 24.0
    assert CANDIDATES["nlogn"](1) == 0.0
    assert CANDIDATES["n^2"](9) == 81.0


def test_input_generators():
    class FixedStream:
        def int_between(self, lo, hi):
            return lo

    xs = to_list(random_list(5, FixedStream()))
    assert xs == [-100] * 5
    assert to_list(reverse_sorted_list(4, None)) == [3, 2, 1, 0]


def test_measure_steps_deterministic(corpus_env):
    a = measure_steps("insertion-sort", random_list, [8, 16], 3, corpus_env)
    b = measure_steps("insertion-sort", random_list, [8, 16], 3, corpus_env)
    assert a == b
    c = measure_steps("insertion-sort", random_list, [8, 16], 4, corpus_env)
    assert set(a) == set(c) == {8, 16}


def test_check_bound_exact_fit():
    steps = {n: 7 * n * n for n in (4, 8, 16, 32, 64)}
    report = check_bound(steps, "n^2", window=1.01)
    assert report.consistent
    assert report.c_lo == report.c_hi == 7.0
    assert report.verdict == "Consistent"


def test_check_bound_rejects_wrong_shape():
    steps = {n: n * n for n in (4, 8, 16, 32, 64, 128)}
    report = check_bound(steps, "n", window=1.5)
    assert not report.consistent
    # upper half ratios double each size: 32, 64, 128
    assert report.c_hi / report.c_lo == pytest.approx(4.0)


def test_check_bound_uses_largest_half_only():
    # noisy small sizes must not affect the verdict
    steps = {4: 10**6, 8: 1, 16: 256, 32: 1024, 64: 4096, 128: 16384}
    report = check_bound(steps, "n^2", window=1.01)
    assert report.consistent


def test_check_bound_input_validation():
    with pytest.raises(ValueError):
        check_bound({4: 1, 8: 2, 16: 3}, "n")
    with pytest.raises(ValueError):
        check_bound({n: n for n in (4, 8, 16, 32)}, "n^3")
    # a zero denominator below the judged half is harmless
    assert check_bound({n: n for n in (1, 2, 4, 8)}, "nlogn").sizes == [1, 2, 4, 8]


def test_emit_csv_frozen():
    report = check_bound({n: 2 * n for n in (4, 8, 16, 32)}, "n", window=1.5)
    assert emit_csv(report) == (
        "size,steps,candidate,c\n"
        "4,8,n,2.000000\n"
        "8,16,n,2.000000\n"
        "16,32,n,2.000000\n"
        "32,64,n,2.000000\n"
    )


def test_ratios_helper():
    report = check_bound({n: 3 * n for n in (4, 8, 16, 32)}, "n")
    assert report.ratios() == {4: 3.0, 8: 3.0, 16: 3.0, 32: 3.0}


HALVING = Recurrence({1: 1}, lambda n, T: 2 * T(n // 2) + n)
LINEAR = Recurrence({0: 0}, lambda n, T: T(n - 1) + n)


def test_unfold_closed_forms():
    # T(2^k) = 2^k (k + 1) for the halving recurrence
    assert unfold(HALVING, 2) == 4
    assert unfold(HALVING, 8) == 32
    assert unfold(HALVING, 2**16) == 2**16 * 17 == 1114112
    # triangular numbers for the linear one
    assert unfold(LINEAR, 10) == 55
    assert unfold(LINEAR, 1000) == 500500


def test_unfold_is_stack_safe():
    assert unfold(LINEAR, 100_000) == 100_000 * 100_001 // 2


def test_unfold_errors():
    with pytest.raises(ValueError):
        unfold(Recurrence({0: 0}, lambda n, T: T(n)), 3)  # not decreasing
    with pytest.raises(ValueError):
        unfold(Recurrence({}, lambda n, T: T(n - 1) + 1), 3)  # no base


def test_halving_recurrence_bounded_by_nlogn():
    sizes = [2**k for k in range(1, 17)]
    report = check_recurrence(
        HALVING, lambda n: n * math.log2(n), (0.0, 2.0), sizes
    )
    assert report.holds
    assert report.constant == pytest.approx(2.0)


def test_halving_recurrence_not_linear():
    sizes = [2**k for k in range(1, 17)]
    report = check_recurrence(HALVING, lambda n: float(n), (0.0, 2.0), sizes)
    assert not report.holds


def test_linear_sum_recurrence_quadratic():
    sizes = list(range(1, 200))
    report = check_recurrence(LINEAR, lambda n: float(n * n), (0.0, 2.0), sizes)
    assert report.holds and report.constant <= 1.0


def test_recurrence_fails_on_zero_growth_function():
    report = check_recurrence(LINEAR, lambda n: 0.0, (0.0, 2.0), [1, 2, 3])
    assert not report.holds


def test_measured_curves_obey_their_recurrences(merge_sort_curve, insertion_worst_curve):
    """Measured step counts stay within a constant of the unfolding of
    their textbook recurrences over the same sizes."""
    sizes = sorted(merge_sort_curve)
    for curve, rec in (
        (merge_sort_curve, HALVING),
        (insertion_worst_curve, LINEAR),
    ):
        ratios = [curve[n] / unfold(rec, n) for n in sizes[len(sizes) // 2 :]]
        assert max(ratios) / min(ratios) < 1.5
