import random
from fractions import Fraction
from itertools import combinations

import pytest

from qcoideal.cartan import (
    AdmissibleError,
    CartanDatum,
    FiniteTypeError,
    cartan_datum,
    enumerate_admissible,
    longest_word,
    parabolic_rho,
    positive_parabolic_roots,
    rho_check_pairing,
    validate_admissible,
    vec_neg,
)


def test_bilinear_values():
    b2 = cartan_datum("B", 2)
    assert b2.bilinear(b2.simple_root(1), b2.simple_root(2)) == -2
    for datum in (b2, cartan_datum("G", 2), cartan_datum("A", 3)):
        for i in datum.labels:
            a = datum.simple_root(i)
            assert datum.bilinear(a, a) == 2 * datum.epsilon(i)
    a2 = cartan_datum("A", 2)
    v = tuple(x + y for x, y in zip(a2.simple_root(1), a2.simple_root(2)))
    # expand bilinearly: (a1,a1) + 2(a1,a2) + (a2,a2) = 2 - 2 + 2
    assert a2.bilinear(v, v) == 2


def test_weyl_action():
    a2 = cartan_datum("A", 2)
    assert a2.weyl_action((1,), a2.simple_root(1)) == vec_neg(a2.simple_root(1))
    assert a2.weyl_action((1, 2), a2.simple_root(1)) == a2.simple_root(2)
    a3 = cartan_datum("A", 3)
    w = longest_word(a3, {2})
    assert a3.weyl_action(w, a3.simple_root(2)) == vec_neg(a3.simple_root(2))


def test_longest_word_examples():
    a3 = cartan_datum("A", 3)
    assert longest_word(a3, {2}) == (2,)
    a4 = cartan_datum("A", 4)
    w = longest_word(a4, {2, 3})
    assert len(w) == 3  # (n-2)(n-1)/2 for n=4
    b2 = cartan_datum("B", 2)
    assert longest_word(b2, {2}) == (2,)
    b3 = cartan_datum("B", 3)
    w = longest_word(b3, {2, 3})
    assert len(w) == len(positive_parabolic_roots(b3, {2, 3})) == 4


def test_longest_word_maps_positives_to_negatives():
    for datum, X in [
        (cartan_datum("A", 4), {2, 3}),
        (cartan_datum("B", 3), {2, 3}),
        (cartan_datum("D", 4), {1, 2, 3}),
    ]:
        w = longest_word(datum, X)
        assert datum.is_reduced(w)
        for beta in positive_parabolic_roots(datum, X):
            img = datum.weyl_action(w, beta)
            assert all(c <= 0 for c in img)


def test_longest_word_rejects_infinite_type():
    aff = cartan_datum("affine:A", 2)
    with pytest.raises(FiniteTypeError, match="finite type"):
        longest_word(aff, set(aff.labels))


def test_parabolic_rho():
    a3 = cartan_datum("A", 3)
    # empty X: all pairings vanish
    for j in a3.labels:
        _, two_rho, _ = parabolic_rho(a3, set())
        assert a3.bilinear(a3.simple_root(j), two_rho) == 0
        assert rho_check_pairing(a3, set(), a3.simple_root(j)) == 0
    # single-node parabolic
    assert rho_check_pairing(a3, {2}, a3.simple_root(1)) == Fraction(-1, 2)


@pytest.mark.parametrize("n,r", [(3, 1), (4, 1), (4, 2)])
def test_aiii_exponent(n, r):
    datum = cartan_datum("A", n)
    X = set(range(r + 1, n - r + 1))
    tau = {i: n + 1 - i for i in datum.labels}
    pair = validate_admissible(datum, X, tau)
    assert pair.pairing_theta_2rho(r) == n - 2 * r + 1


def test_validate_admissible_examples():
    a3 = cartan_datum("A", 3)
    pair = validate_admissible(a3, {2}, {1: 3, 2: 2, 3: 1})
    assert pair.X == frozenset({2})
    validate_admissible(a3, set(), {i: i for i in a3.labels})
    with pytest.raises(AdmissibleError) as err:
        validate_admissible(a3, {2}, {i: i for i in a3.labels})
    assert any("rho_X^vee" in v for v in err.value.violations)


def test_theta_examples():
    a3 = cartan_datum("A", 3)
    quasi = validate_admissible(a3, set(), {i: i for i in a3.labels})
    for i in a3.labels:
        assert quasi.theta_alpha(i) == vec_neg(a3.simple_root(i))
    pair = validate_admissible(a3, {2}, {1: 3, 2: 2, 3: 1})
    assert pair.theta_alpha(1) == (0, -1, -1)
    # involution and the split-node displacement identity
    for p in enumerate_admissible(a3):
        for i in a3.labels:
            a = a3.simple_root(i)
            assert p.theta(p.theta(a)) == a
            ti = p.tau[i]
            lhs = tuple(
                x - y for x, y in zip(p.theta_alpha(ti), a3.simple_root(ti))
            )
            rhs = tuple(x - y for x, y in zip(p.theta_alpha(i), a))
            assert lhs == rhs
        for j in sorted(p.X):
            assert a3.weyl_action(p.wX_word, a3.simple_root(j)) == vec_neg(
                a3.simple_root(p.tau[j])
            )


def _naive_violations(datum, X, tau):
    """Independent admissibility check: longest element found by exhausting
    the parabolic Weyl group rather than by the descent algorithm."""
    labels = set(datum.labels)
    out = []
    if any(tau[tau[i]] != i for i in labels):
        out.append("involution")
    if any(datum.a(i, j) != datum.a(tau[i], tau[j]) for i in labels for j in labels):
        out.append("matrix")
    if {tau[i] for i in X} != set(X):
        out.append("stability")
    if out:
        return out
    plus = positive_parabolic_roots(datum, X)
    # exhaust W_X as permutations of the root set
    frontier = {tuple(tuple(b) for b in plus)}
    seen = set(frontier)
    longest = None
    while frontier:
        nxt = set()
        for state in frontier:
            for j in sorted(X):
                img = tuple(datum.reflect(j, b) for b in state)
                if img not in seen:
                    seen.add(img)
                    nxt.add(img)
        frontier = nxt
    for state in seen:
        if all(all(c <= 0 for c in b) for b in state):
            longest = state
    if longest is None:
        out.append("no longest element")
        return out
    # recover w_X action on simple roots of X from the state
    index = {tuple(b): k for k, b in enumerate(plus)}
    for j in sorted(X):
        img = longest[index[datum.simple_root(j)]]
        if img != vec_neg(datum.simple_root(tau[j])):
            out.append(f"condition-2 at {j}")
    for j in sorted(labels - set(X)):
        if tau[j] == j:
            total = Fraction(0)
            for beta in plus:
                total += Fraction(
                    2 * datum.bilinear(datum.simple_root(j), beta),
                    datum.root_norm(beta),
                )
            if (total / 2).denominator != 1:
                out.append(f"condition-3 at {j}")
    return out


def _involutions(labels):
    labels = sorted(labels)

    def rec(rem):
        if not rem:
            yield {}
            return
        first, rest = rem[0], rem[1:]
        for sub in rec(rest):
            yield {**sub, first: first}
        for k, p in enumerate(rest):
            for sub in rec(rest[:k] + rest[k + 1:]):
                yield {**sub, first: p, p: first}

    return list(rec(labels))


@pytest.mark.parametrize("kind,rank,count", [
    ("A", 1, 2), ("A", 2, 3), ("A", 3, 5), ("A", 4, 4),
    ("B", 2, 3), ("B", 3, 4), ("C", 3, 3), ("D", 4, 11), ("G", 2, 2),
])
def test_enumerate_matches_naive_search(kind, rank, count):
    datum = cartan_datum(kind, rank)
    found = enumerate_admissible(datum)
    assert len(found) == count
    keys = {(tuple(sorted(p.X)), tuple(sorted(p.tau.items()))) for p in found}
    labels = sorted(datum.labels)
    naive = set()
    for size in range(len(labels) + 1):
        for X in combinations(labels, size):
            for tau in _involutions(labels):
                if not _naive_violations(datum, set(X), tau):
                    naive.add((tuple(sorted(X)), tuple(sorted(tau.items()))))
    assert keys == naive


def test_enumerate_contains_worked_pairs():
    a3 = cartan_datum("A", 3)
    keys = {(tuple(sorted(p.X)), tuple(sorted((a, b) for a, b in p.tau.items() if a < b)))
            for p in enumerate_admissible(a3)}
    assert ((2,), ((1, 3),)) in keys
    assert ((), ((1, 3),)) in keys
    b2 = cartan_datum("B", 2)
    keys = {(tuple(sorted(p.X)), tuple(sorted((a, b) for a, b in p.tau.items() if a < b)))
            for p in enumerate_admissible(b2)}
    assert ((2,), ()) in keys


def test_word_inverse_and_form_invariance():
    rng = random.Random(3)
    for datum in (cartan_datum("A", 3), cartan_datum("B", 3), cartan_datum("G", 2)):
        for _ in range(100):
            word = tuple(rng.choice(datum.labels) for _ in range(rng.randint(1, 6)))
            beta = tuple(rng.randint(-3, 3) for _ in datum.labels)
            gamma = tuple(rng.randint(-3, 3) for _ in datum.labels)
            roundtrip = datum.weyl_action(tuple(reversed(word)), datum.weyl_action(word, beta))
            assert roundtrip == beta
            assert datum.bilinear(
                datum.weyl_action(word, beta), datum.weyl_action(word, gamma)
            ) == datum.bilinear(beta, gamma)


def test_is_reduced():
    a2 = cartan_datum("A", 2)
    assert a2.is_reduced((1, 2, 1))
    assert not a2.is_reduced((1, 1))
    assert not a2.is_reduced((1, 2, 1, 2))
    b2 = cartan_datum("B", 2)
    assert b2.is_reduced((1, 2, 1, 2))
    assert not b2.is_reduced((1, 2, 1, 2, 1))


def test_enumeration_rank_guard():
    n = 11
    A = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    big = CartanDatum(A)
    with pytest.raises(ValueError, match="capped"):
        enumerate_admissible(big)


def test_datum_validation():
    with pytest.raises(ValueError):
        CartanDatum([[2, -1], [0, 2]])  # asymmetric zero pattern
    with pytest.raises(ValueError):
        CartanDatum([[2, 1], [1, 2]])  # positive off-diagonal
    with pytest.raises(ValueError):
        CartanDatum([[2, -1], [-1, 2]], eps=(2, 2))  # not coprime
    datum = CartanDatum([[2, -2], [-1, 2]])
    assert datum.eps == (1, 2)
