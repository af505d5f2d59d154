"""Sparse exact linear algebra against dense brute force."""

import random
from fractions import Fraction

from newstein.exactla import (Echelon, SparseExactMatrix, kernel_basis,
                              random_primes, span_contains)

from oracles import dense_rank

F = Fraction


def random_sparse(rng, nrows, ncols, density=0.3):
    mat = SparseExactMatrix(nrows, ncols)
    dense = [[F(0)] * ncols for _ in range(nrows)]
    for r in range(nrows):
        for c in range(ncols):
            if rng.random() < density:
                v = F(rng.randint(-6, 6), rng.randint(1, 4))
                if v:
                    mat.add(r, c, v)
                    dense[r][c] = v
    return mat, dense


def test_rank_exact_matches_dense():
    rng = random.Random(11)
    for _ in range(25):
        m, d = random_sparse(rng, rng.randint(1, 12), rng.randint(1, 10))
        assert m.rank_exact() == dense_rank(d)


def test_rank_mod_p_matches_exact_generic():
    rng = random.Random(13)
    primes = random_primes(3, seed=5)
    for _ in range(15):
        m, d = random_sparse(rng, rng.randint(1, 10), rng.randint(1, 10))
        exact = dense_rank(d)
        for p in primes:
            assert m.rank_mod_p(p) == exact


def test_rank_mod_p_can_undershoot_on_bad_prime():
    m = SparseExactMatrix(1, 1)
    m.add(0, 0, F(7))
    assert m.rank_exact() == 1
    assert m.rank_mod_p(7) == 0
    assert m.rank_mod_p(5) == 1


def test_kernel_basis_exact():
    # columns (1,1,0), (2,2,0), (0,0,1): kernel spanned by 2*c0 - c1
    cols = [{0: F(1), 1: F(1)}, {0: F(2), 1: F(2)}, {2: F(1)}]
    ker = kernel_basis(cols)
    assert len(ker) == 1
    combo = ker[0]
    merged = {}
    for i, c in combo.items():
        for k, v in cols[i].items():
            merged[k] = merged.get(k, 0) + c * v
    assert all(v == 0 for v in merged.values())


def test_span_contains_certificate():
    span = [{0: F(1), 1: F(2)}, {1: F(1)}]
    target = {0: F(3), 1: F(4)}
    combo = span_contains(span, target)
    assert combo is not None
    rebuilt = {}
    for i, c in combo.items():
        for k, v in span[i].items():
            rebuilt[k] = rebuilt.get(k, 0) + c * v
    assert {k: v for k, v in rebuilt.items() if v} == target
    assert span_contains(span, {2: F(1)}) is None


def test_echelon_rank_generic_keys():
    ech = Echelon()
    ech.insert({("a", 1): F(1), ("b", 2): F(1)})
    ech.insert({("a", 1): F(2), ("b", 2): F(2)})
    ech.insert({("b", 2): F(1)})
    assert ech.rank == 2


def test_random_primes_are_prime_and_large():
    ps = random_primes(4, seed=1)
    assert len(set(ps)) == 4
    for p in ps:
        assert p > 1 << 20
        assert all(p % q for q in range(2, 200))
