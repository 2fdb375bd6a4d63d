import random
from collections import Counter
from fractions import Fraction
from itertools import product

import pytest

from sumprod.energy import (
    MultiplicativeQuadruple,
    cs_lower_bound,
    dominant_class,
    dyadic_decompose,
    energy,
    energy_asym,
    energy_bruteforce,
    energy_report,
    ratio_profile,
)
from sumprod.numset import NumberSet, dilate, ratioset

F = Fraction


def oracle_energy(elems):
    """Test-side oracle: literal quadruple enumeration over Fractions."""
    return sum(1 for a, b, c, d in product(elems, repeat=4) if a * d == b * c)


def oracle_energy_asym(A, B):
    return sum(
        1 for a, b, c, d in product(A.elements, B.elements, A.elements, B.elements)
        if a * d == b * c
    )


def random_rational_set(rng, n, num_max=40, dens=(1, 2, 3, 5)):
    vals = set()
    while len(vals) < n:
        vals.add(F(rng.randint(1, num_max), rng.choice(dens)))
    return NumberSet(vals)


def test_energy_fixed_values():
    assert energy(NumberSet([1, 2, 3])) == 15
    assert energy(NumberSet([1, 2, 4])) == 19
    assert energy(NumberSet([1, 2, 4, 8])) == 44
    assert energy(NumberSet([1, 2])) == 6
    assert energy(NumberSet([7])) == 1


def test_bruteforce_fixed_values():
    assert energy_bruteforce(NumberSet([5])) == 1
    assert energy_bruteforce(NumberSet([1, 2])) == 6
    assert energy_bruteforce(NumberSet([1, 2, 3])) == 15


def test_bruteforce_cap():
    big = NumberSet(range(1, 66))
    with pytest.raises(ValueError, match="capped"):
        energy_bruteforce(big)
    assert energy_bruteforce(NumberSet([1, 2, 3]), cap=3) == 15


def test_energy_matches_oracles():
    rng = random.Random(99)
    for _ in range(30):
        A = random_rational_set(rng, rng.randint(1, 8))
        expected = oracle_energy(A.elements)
        assert energy(A) == expected
        assert energy_bruteforce(A) == expected


def test_profile_invariants():
    rng = random.Random(17)
    for _ in range(25):
        n = rng.randint(1, 10)
        A = random_rational_set(rng, n)
        prof = ratio_profile(A)
        assert set(prof.entries) == set(ratioset(A, A).elements)
        assert prof.total == n * n
        assert prof.entries[F(1)] == n
        assert all(prof.entries[x] == prof.entries[1 / x] for x in prof.entries)
        assert all(1 <= m <= n for m in prof.entries.values())


def test_profile_fixed_examples():
    prof = ratio_profile(NumberSet([1, 2, 3]))
    assert prof.entries[F(1)] == 3
    assert sum(1 for m in prof.entries.values() if m == 1) == 6
    prof = ratio_profile(NumberSet([1, 2, 4]))
    assert prof.entries == {F(1): 3, F(2): 2, F(1, 2): 2, F(4): 1, F(1, 4): 1}
    assert ratio_profile(NumberSet([9])).entries == {F(1): 1}


def test_dyadic_decomposition_examples():
    d = dyadic_decompose(ratio_profile(NumberSet([1, 2, 3])))
    assert len(d.classes[0]) == 6 and d.class_sums[0] == 6
    assert d.classes[1] == (F(1),) and d.class_sums[1] == 9

    d = dyadic_decompose(ratio_profile(NumberSet([1, 2, 4])))
    assert d.classes[0] == (F(1, 4), F(4)) and d.class_sums[0] == 2
    assert d.classes[1] == (F(1, 2), F(1), F(2)) and d.class_sums[1] == 17

    d = dyadic_decompose(ratio_profile(NumberSet([5])))
    assert d.classes == ((F(1),),) and d.class_sums == (1,)


def test_dyadic_partition_property():
    rng = random.Random(3)
    for _ in range(15):
        n = rng.randint(1, 12)
        A = random_rational_set(rng, n)
        prof = ratio_profile(A)
        d = dyadic_decompose(prof)
        seen = [x for cls in d.classes for x in cls]
        assert sorted(seen) == sorted(prof.entries)
        for i, cls in enumerate(d.classes):
            for x in cls:
                assert 2 ** i <= prof.entries[x] < 2 ** (i + 1)
        assert all(not c or 0 <= i <= n.bit_length() - 1 for i, c in enumerate(d.classes))


def test_dominant_class_examples():
    A = NumberSet([1, 2, 3])
    dom = dominant_class(dyadic_decompose(ratio_profile(A)), 15, 3)
    assert (dom.index, dom.ratios, dom.m, dom.class_sum) == (1, (F(1),), 1, 9)
    assert 2 * dom.class_sum >= 15  # >= E / ceil(log2 3)

    A = NumberSet([1, 2, 4])
    dom = dominant_class(dyadic_decompose(ratio_profile(A)), 19, 3)
    assert (dom.index, dom.m, dom.class_sum) == (1, 3, 17)
    assert dom.ratios == (F(1, 2), F(1), F(2))

    dom = dominant_class(dyadic_decompose(ratio_profile(NumberSet([5]))), 1, 1)
    assert (dom.index, dom.ratios, dom.m) == (0, (F(1),), 1)


def test_dominant_class_pigeonhole():
    rng = random.Random(71)
    for _ in range(25):
        A = random_rational_set(rng, rng.randint(2, 14))
        E = energy(A)
        d = dyadic_decompose(ratio_profile(A))
        dom = dominant_class(d, E, len(A))
        assert dom.pigeonhole_holds
        assert dom.class_sum * len(d.nonempty()) >= E


def test_log_form_can_fail_for_powers_of_two():
    # A = {1, 2}: E = 6 but the best class sum is 4 < 6 / ceil(log2 2)
    A = NumberSet([1, 2])
    dom = dominant_class(dyadic_decompose(ratio_profile(A)), 6, 2)
    assert dom.pigeonhole_holds
    assert dom.log_form_holds is False


def test_cs_lower_bound_examples():
    bound, holds = cs_lower_bound(NumberSet([1, 2, 3]))
    assert bound == F(81, 6) and holds
    bound, holds = cs_lower_bound(NumberSet([1, 2, 4]))
    assert bound == F(81, 5) and holds
    bound, holds = cs_lower_bound(NumberSet([7]))
    assert bound == F(1) and holds


def test_energy_bounds():
    rng = random.Random(13)
    for _ in range(25):
        n = rng.randint(1, 12)
        A = random_rational_set(rng, n)
        E = energy(A)
        assert n ** 2 <= E <= n ** 3
        bound, holds = cs_lower_bound(A)
        assert holds and E >= bound


def test_energy_scaling_invariance():
    rng = random.Random(29)
    for _ in range(10):
        A = random_rational_set(rng, rng.randint(1, 8))
        c = F(rng.randint(1, 7), rng.randint(1, 7))
        assert energy(dilate(c, A)) == energy(A)


def test_energy_asym():
    A, B = NumberSet([1, 2]), NumberSet([1, 3])
    assert energy_asym(A, B) == 4
    assert energy_asym(NumberSet([5]), NumberSet([11])) == 1
    rng = random.Random(55)
    for _ in range(12):
        A = random_rational_set(rng, rng.randint(1, 6))
        B = random_rational_set(rng, rng.randint(1, 6))
        expected = oracle_energy_asym(A, B)
        assert energy_asym(A, B) == expected
        assert energy_asym(A, A) == energy(A)
        # swapping roles counts quadruples over B x A x B x A: same total
        assert energy_asym(B, A) == oracle_energy_asym(B, A) == expected


def test_energy_dual_counting_routes():
    # grouping quadruples by ratio or by product must agree
    rng = random.Random(61)
    for _ in range(12):
        A = random_rational_set(rng, rng.randint(1, 9))
        by_product = Counter(a * d for a in A.elements for d in A.elements)
        assert energy(A) == sum(c * c for c in by_product.values())


def test_energy_report():
    rep = energy_report(NumberSet([1, 2, 3]))
    assert rep.energy == 15
    assert rep.sumset_size == 5 and rep.productset_size == 6
    assert rep.cs_lower_bound == F(81, 6) and rep.cs_holds
    assert rep.energy_bound_rhs == 4 * 25 * 2 and rep.energy_bound_holds
    rep = energy_report(NumberSet([7]))
    assert rep.energy_bound_holds is None


def test_quadruple_record():
    q = MultiplicativeQuadruple.from_parts(2, 6, 1, 3)
    assert q.lam == 2
    with pytest.raises(ValueError):
        MultiplicativeQuadruple.from_parts(2, 6, 1, 4)


def test_numpy_counts_path_agrees(monkeypatch):
    import sumprod.numset as ns

    A = NumberSet(range(1, 257))
    fast = energy(A)
    monkeypatch.setattr(ns, "_NUMPY_MIN_PAIRS", 1 << 60)
    assert energy(A) == fast == 411968
