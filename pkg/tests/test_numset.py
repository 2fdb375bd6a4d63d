import random
from fractions import Fraction

import pytest

from sumprod.numset import (
    NumberSet,
    ceil_log2,
    dilate,
    floor_log2,
    kfold_sumset,
    parse_set_text,
    productset,
    productset_size,
    ratioset,
    ratioset_size,
    save_set,
    load_set,
    sumset,
    sumset_size,
)

F = Fraction


def brute_sumset(A, B):
    return sorted({a + b for a in A for b in B})


def brute_productset(A, B):
    return sorted({a * b for a in A for b in B})


def brute_ratioset(A, B):
    return sorted({a / b for a in A for b in B})


def random_rational_set(rng, n, num_max=60, dens=(1, 2, 3, 4, 5)):
    vals = set()
    while len(vals) < n:
        vals.add(F(rng.randint(1, num_max), rng.choice(dens)))
    return NumberSet(vals)


def test_numberset_canonical_form():
    A = NumberSet([3, 1, 2, 2, F(1, 2)])
    assert A.elements == (F(1, 2), F(1), F(2), F(3))
    assert A.min == F(1, 2)
    assert len(A) == 4
    assert 2 in A and F(5, 2) not in A


def test_numberset_rejects_nonpositive():
    with pytest.raises(ValueError):
        NumberSet([1, 0, 2])
    with pytest.raises(ValueError):
        NumberSet([-1, 2])


def test_numberset_order_independent():
    rng = random.Random(5)
    vals = [F(rng.randint(1, 99), rng.randint(1, 9)) for _ in range(30)]
    shuffled = vals[:]
    rng.shuffle(shuffled)
    assert NumberSet(vals) == NumberSet(shuffled)


def test_sumset_examples():
    assert sumset(NumberSet([5]), NumberSet([7])).elements == (F(12),)
    assert [int(x) for x in sumset(NumberSet([1, 2, 3]), NumberSet([1, 2, 3]))] == [2, 3, 4, 5, 6]
    assert [int(x) for x in sumset(NumberSet([1, 2, 4]), NumberSet([1, 2, 4]))] == [2, 3, 4, 5, 6, 8]


def test_productset_examples():
    assert productset(NumberSet([5]), NumberSet([7])).elements == (F(35),)
    assert [int(x) for x in productset(NumberSet([1, 2, 3]), NumberSet([1, 2, 3]))] == [1, 2, 3, 4, 6, 9]
    assert [int(x) for x in productset(NumberSet([1, 2, 4]), NumberSet([1, 2, 4]))] == [1, 2, 4, 8, 16]


def test_ratioset_examples():
    assert ratioset(NumberSet([3]), NumberSet([3])).elements == (F(1),)
    A = NumberSet([1, 2, 3])
    assert ratioset(A, A).elements == (F(1, 3), F(1, 2), F(2, 3), F(1), F(3, 2), F(2), F(3))
    B = NumberSet([1, 2, 4])
    assert ratioset(B, B).elements == (F(1, 4), F(1, 2), F(1), F(2), F(4))


def test_dilate():
    A = NumberSet([1, 2, 3])
    assert dilate(1, A) == A
    assert dilate(2, A).elements == (F(2), F(4), F(6))
    assert dilate(F(1, 2), NumberSet([2, 4])).elements == (F(1), F(2))
    assert len(dilate(F(7, 3), A)) == len(A)
    with pytest.raises(ValueError):
        dilate(0, A)
    with pytest.raises(ValueError):
        dilate(-2, A)


def test_kfold_sumset():
    assert [int(x) for x in kfold_sumset(NumberSet([1, 2]), 3)] == [3, 4, 5, 6]
    A = NumberSet([1, 2, 3])
    assert kfold_sumset(A, 1) == A
    assert kfold_sumset(A, 2) == sumset(A, A)
    # arithmetic progression oracle: |k{1..n}| = k(n-1)+1
    assert len(kfold_sumset(NumberSet(range(1, 6)), 3)) == 3 * 4 + 1
    with pytest.raises(ValueError):
        kfold_sumset(A, 0)


def test_kfold_associativity():
    rng = random.Random(11)
    for _ in range(10):
        A = random_rational_set(rng, rng.randint(1, 6))
        k = rng.randint(1, 3)
        assert kfold_sumset(A, k + 1) == sumset(kfold_sumset(A, k), A)


def test_empty_inputs_error():
    E = NumberSet([])
    A = NumberSet([1])
    for op in (sumset, productset, ratioset):
        with pytest.raises(ValueError, match="empty"):
            op(E, A)
        with pytest.raises(ValueError, match="empty"):
            op(A, E)


def test_against_bruteforce_oracle():
    rng = random.Random(23)
    for _ in range(40):
        A = random_rational_set(rng, rng.randint(1, 9))
        B = random_rational_set(rng, rng.randint(1, 9))
        assert list(sumset(A, B)) == brute_sumset(A.elements, B.elements)
        assert list(productset(A, B)) == brute_productset(A.elements, B.elements)
        assert list(ratioset(A, B)) == brute_ratioset(A.elements, B.elements)
        assert sumset_size(A, B) == len(brute_sumset(A.elements, B.elements))
        assert productset_size(A, B) == len(brute_productset(A.elements, B.elements))
        assert ratioset_size(A, B) == len(brute_ratioset(A.elements, B.elements))


def test_size_bounds_and_equalities():
    rng = random.Random(31)
    for _ in range(25):
        n = rng.randint(2, 12)
        A = random_rational_set(rng, n)
        s = sumset_size(A, A)
        assert 2 * n - 1 <= s <= n * (n + 1) // 2
    # arithmetic progressions achieve the lower bound
    for n in (2, 5, 16):
        ap = NumberSet(3 + 7 * i for i in range(n))
        assert sumset_size(ap, ap) == 2 * n - 1
    # geometric progressions have minimal productsets
    for n in (2, 5, 16):
        gp = NumberSet(F(3) * F(5, 2) ** i for i in range(n))
        assert productset_size(gp, gp) == 2 * n - 1


def test_ratioset_invariants():
    rng = random.Random(37)
    for _ in range(20):
        n = rng.randint(1, 10)
        A = random_rational_set(rng, n)
        R = ratioset(A, A)
        assert F(1) in R
        assert all(1 / r in R for r in R)
        assert len(R) <= n * n - n + 1


def test_numpy_and_python_paths_agree(monkeypatch):
    import sumprod.numset as ns

    A = NumberSet(range(1, 301))
    fast = (sumset_size(A, A), productset_size(A, A), ratioset_size(A, A))
    monkeypatch.setattr(ns, "_NUMPY_MIN_PAIRS", 1 << 60)
    slow = (sumset_size(A, A), productset_size(A, A), ratioset_size(A, A))
    assert fast == slow
    assert fast[0] == 599
    # huge elements fall back to exact big-int arithmetic automatically
    G = NumberSet(2 ** i for i in range(70, 100))
    assert productset_size(G, G) == 2 * 30 - 1


def test_dilation_commutes_with_operations():
    rng = random.Random(41)
    for _ in range(10):
        A = random_rational_set(rng, rng.randint(2, 7))
        c = F(rng.randint(1, 9), rng.randint(1, 9))
        assert sumset(dilate(c, A), dilate(c, A)) == dilate(c, sumset(A, A))
        assert ratioset(dilate(c, A), dilate(c, A)) == ratioset(A, A)


def test_threads_produce_identical_results():
    A = NumberSet(range(1, 40))
    B = NumberSet(range(3, 50))
    assert sumset(A, B, threads=2) == sumset(A, B)
    assert productset(A, B, threads=2) == productset(A, B)


def test_ceil_floor_log2():
    assert [ceil_log2(n) for n in (1, 2, 3, 4, 5, 8, 9)] == [0, 1, 2, 2, 3, 3, 4]
    assert [floor_log2(n) for n in (1, 2, 3, 4, 7, 8)] == [0, 1, 1, 2, 2, 3]
    with pytest.raises(ValueError):
        ceil_log2(0)


def test_parse_set_text():
    A = parse_set_text("# comment\n1\n\n5/3\n2\n")
    assert A.elements == (F(1), F(5, 3), F(2))
    with pytest.raises(ValueError, match=":2:"):
        parse_set_text("1\n0\n")
    with pytest.raises(ValueError, match=":1:"):
        parse_set_text("-3\n")
    with pytest.raises(ValueError, match=":3:"):
        parse_set_text("1\n2\n1.5\n")
    with pytest.raises(ValueError, match=":2:"):
        parse_set_text("1\n2/0\n")
    with pytest.raises(ValueError, match="no values"):
        parse_set_text("# nothing\n")


def test_set_file_roundtrip(tmp_path):
    A = NumberSet([F(1, 3), 2, F(7, 5), 11])
    path = tmp_path / "a.set"
    save_set(A, path)
    assert load_set(path) == A
    text = path.read_text()
    assert text == "1/3\n7/5\n2\n11\n"
