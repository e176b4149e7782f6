"""Smoke test for the `feige` extension module.

Build and install first, e.g. `maturin develop --release -m crates/py/Cargo.toml`.
"""

import json
import math
from fractions import Fraction

import feige


def main():
    assert feige.binomial(10, 3) == 120
    lower, upper = feige.e_bracket(25)
    assert lower < Fraction("2.7182818284590452353602874713526624977572") < upper

    assert feige.tail_cutoff(4, Fraction(1, 5)) == 0
    assert feige.f_of_p(4, "2/5") == Fraction(297, 625)
    assert feige.f_of_p(4, Fraction(2, 5)) == feige.brute_force_iid(4, "0.4")
    assert feige.partial_tail(2, 2, Fraction(1, 3)) == 1
    assert feige.breakpoints(4) == [Fraction(m, 5) for m in range(1, 5)]
    assert feige.exact_heterogeneous(["2", "2"]) == Fraction(3, 4)
    assert feige.exact_heterogeneous([3, 3, 3]) == Fraction(20, 27)

    h = feige.h_value(4, 2)
    assert (h.unnormalized, h.value, h.p_star) == (297, Fraction(297, 625), Fraction(2, 5))
    assert feige.h_floor(10) == Fraction(10**10, 11**10)
    r = feige.global_min(10)
    assert r.argmin_p == Fraction(1, 11) and r.certified_above_1_over_e
    assert feige.certify_above_1_over_e(1000, 25)
    assert not feige.certify_above_1_over_e(10, 2)

    assert feige.incomplete_beta("3/5", 3, 2) == Fraction(99, 2500)
    assert feige.h_via_beta(4, 2) == Fraction(297, 625)
    assert feige.d_value(4, 1) == feige.d_value(4, 3) == Fraction(41, 625)
    assert feige.w_compare(3, 5) == -1
    assert feige.g_argmax(2, 1) == Fraction(2, 3)
    assert feige.rectangle_bound_check(10, 4).holds
    assert feige.case2_check(4, 2).holds is False
    assert feige.symmetry_check(12).passed
    assert feige.b_monotone_check(50).passed

    est = feige.simulate(["2", "2"], trials=100_000, seed=7, workers=2)
    assert est.hits == feige.simulate(["2", "2"], trials=100_000, seed=7).hits
    assert abs(est.p_hat - 0.75) <= 4 * math.sqrt(0.75 * 0.25 / est.trials)

    records = feige.sweep(10, 1000)
    assert len(records) == 1000
    assert min(records, key=lambda rec: rec.f_value).p == Fraction(1, 11)

    bundle = json.loads(feige.run_verify(6))
    assert bundle["schema"] == "feige-verify/1"
    assert all(not rep["failures"] for rep in bundle["reports"])
    faulty = json.loads(feige.run_verify(6, self_test_fault=True))
    assert sum(len(rep["failures"]) for rep in faulty["reports"]) == 1

    for bad in (lambda: feige.f_of_p(4, "3/2"), lambda: feige.h_value(4, 5), lambda: feige.run_verify(1)):
        try:
            bad()
        except ValueError:
            pass
        else:
            raise AssertionError("expected ValueError")

    print("python smoke test passed")


if __name__ == "__main__":
    main()
