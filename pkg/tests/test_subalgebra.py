import itertools

import pytest

from gyrokit import (
    ElementSubset,
    GyroHomomorphism,
    closure,
    construct,
    enumerate_normals,
    enumerate_subgyrogroups,
    is_associative,
    is_normal,
    is_subgyrogroup,
    kernel,
    left_cosets,
    quotient,
    set_product,
    subgyrogroups_by_generators,
)
from gyrokit.errors import (
    EmptySubset,
    IllDefinedProduct,
    NotAHomomorphism,
    NotASubgyrogroup,
    NotNormal,
    OrderTooLarge,
)
from gyrokit.subalgebra import canonical_order

import oracles


def S(*xs, n=8):
    return ElementSubset.of(xs, n)


def as_frozen(subsets):
    return [frozenset(s.elements()) for s in subsets]


class TestElementSubset:
    def test_basics(self):
        s = S(0, 3, 5)
        assert s.elements() == (0, 3, 5)
        assert len(s) == 3 and 3 in s and 4 not in s
        assert str(s) == "{0,3,5}"
        assert (s | S(1)) == S(0, 1, 3, 5)
        assert (s & S(3, 4)) == S(3)
        assert (s - S(0)) == S(3, 5)
        assert S(3).issubset(s) and not s.issubset(S(3))

    def test_order_is_enforced(self):
        with pytest.raises(IndexError):
            ElementSubset.of([8], 8)
        with pytest.raises(ValueError):
            S(0) | ElementSubset.of([0], 16)

    def test_canonical_order(self):
        got = canonical_order([S(0, 2), S(0), S(0, 1), S(0, 2)])
        assert got == [S(0), S(0, 1), S(0, 2)]


class TestSetProduct:
    def test_examples(self, K1):
        assert set_product(K1, 2, S(0, 1)) == S(2, 3)
        assert set_product(K1, S(0, 1), S(0, 1)) == S(0, 1)
        for bits in range(1, 256):
            X = ElementSubset(bits, 8)
            assert set_product(K1, K1.identity, X) == X

    def test_matches_oracle(self, K2):
        T = K2.table.rows()
        A, B = ElementSubset.of([1, 4, 9], 16), ElementSubset.of([2, 13], 16)
        assert frozenset(set_product(K2, A, B).elements()) == oracles.product_set(T, [1, 4, 9], [2, 13])

    def test_empty_operand_rejected(self, K1):
        with pytest.raises(EmptySubset):
            set_product(K1, ElementSubset(0, 8), S(0))


class TestClosure:
    def test_examples(self, K1, K2):
        assert closure(K1, S(2)) == S(0, 2)
        assert closure(K1, S(0)) == S(0)
        assert closure(K2, ElementSubset.of([8], 16)) == ElementSubset.of([0, 8], 16)

    def test_oracle_fixed_point(self, K1):
        T = K1.table.rows()
        for seed in itertools.combinations(range(8), 2):
            cur = set(seed) | {0}
            while True:
                nxt = cur | {T[a][b] for a in cur for b in cur}
                if nxt == cur:
                    break
                cur = nxt
            assert set(closure(K1, S(*seed)).elements()) == cur


class TestSubgyrogroups:
    def test_examples(self, K1):
        assert is_subgyrogroup(K1, S(0, 1, 2, 3))
        assert not is_subgyrogroup(K1, S(0, 4, 6))
        assert is_subgyrogroup(K1, S(0))
        with pytest.raises(EmptySubset):
            is_subgyrogroup(K1, ElementSubset(0, 8))

    @pytest.mark.parametrize("name", ["K1", "K2"])
    def test_scan_matches_brute_force(self, K1, K2, name):
        G = {"K1": K1, "K2": K2}[name]
        assert as_frozen(enumerate_subgyrogroups(G)) == oracles.canonical(oracles.brute_subgyrogroups(G.table.rows()))

    def test_k1_list(self, K1):
        subs = enumerate_subgyrogroups(K1)
        # frozen from the brute-force oracle above
        assert [s.elements() for s in subs] == [
            (0,),
            (0, 1),
            (0, 2),
            (0, 3),
            (0, 4),
            (0, 5),
            (0, 1, 2, 3),
            (0, 1, 4, 5),
            (0, 1, 6, 7),
            (0, 1, 2, 3, 4, 5, 6, 7),
        ]

    def test_k2_contains(self, K2):
        subs = enumerate_subgyrogroups(K2)
        assert ElementSubset.of([0, 9], 16) in subs
        assert len(subs) == 35

    def test_trivial(self, trivial):
        assert enumerate_subgyrogroups(trivial) == [ElementSubset.of([0], 1)]

    def test_order_too_large(self, K1):
        with pytest.raises(OrderTooLarge):
            enumerate_subgyrogroups(K1, limit=4)

    def test_scan_at_the_limit(self):
        G = construct(oracles.cyclic(24))
        subs = enumerate_subgyrogroups(G)
        # subgroups of Z24 correspond to the 8 divisors of 24
        assert len(subs) == 8

    @pytest.mark.parametrize("name", ["K1", "K2"])
    def test_generator_mode(self, K1, K2, name):
        G = {"K1": K1, "K2": K2}[name]
        full = enumerate_subgyrogroups(G)
        found, complete = subgyrogroups_by_generators(G, None)
        assert complete and found == full
        found3, complete3 = subgyrogroups_by_generators(G, 3)
        assert set(found3) <= set(full)
        if complete3:
            assert found3 == full

    def test_closed_sets_are_fixed_points(self, K1, K2):
        for G in (K1, K2):
            for H in enumerate_subgyrogroups(G):
                assert closure(G, H) == H

    @pytest.mark.parametrize("name", ["K1", "K2"])
    def test_finite_closure_gives_inverses(self, K1, K2, name):
        G = {"K1": K1, "K2": K2}[name]
        T = G.table.rows()
        others = [x for x in range(G.order) if x != G.identity]
        for mask in range(1 << len(others)):
            Sx = {G.identity} | {others[i] for i in range(len(others)) if mask >> i & 1}
            if oracles.closed(T, Sx):
                assert all(G.inverse(a) in Sx for a in Sx)


class TestNormality:
    def test_examples(self, K1):
        assert is_normal(K1, S(0, 1))
        assert not is_normal(K1, S(0, 2))
        assert is_normal(K1, ElementSubset.full(8))

    def test_requires_subgyrogroup(self, K1):
        with pytest.raises(NotASubgyrogroup):
            is_normal(K1, S(0, 4, 6))

    @pytest.mark.parametrize("name", ["K1", "K2"])
    def test_matches_oracle(self, K1, K2, name):
        G = {"K1": K1, "K2": K2}[name]
        T = G.table.rows()
        for H in enumerate_subgyrogroups(G):
            assert is_normal(G, H) == oracles.brute_is_normal(T, set(H.elements()))

    def test_k1_normals(self, K1):
        assert [s.elements() for s in enumerate_normals(K1)] == [
            (0,),
            (0, 1),
            (0, 1, 2, 3),
            (0, 1, 4, 5),
            (0, 1, 6, 7),
            tuple(range(8)),
        ]

    def test_trivial(self, trivial):
        assert enumerate_normals(trivial) == [ElementSubset.of([0], 1)]

    def test_normals_within_subgyrogroups(self, K1, K2):
        for G in (K1, K2):
            subs, norms = enumerate_subgyrogroups(G), enumerate_normals(G)
            assert set(norms) <= set(subs)
            for X in (ElementSubset.of([G.identity], G.order), ElementSubset.full(G.order)):
                assert X in subs and X in norms


class TestCosetsAndQuotients:
    def test_cosets_of_01(self, K1):
        fam = left_cosets(K1, S(0, 1))
        assert fam.cosets == (S(0, 1), S(2, 3), S(4, 5), S(6, 7))

    def test_trivial_and_full(self, K1):
        assert len(left_cosets(K1, S(0))) == 8
        assert left_cosets(K1, ElementSubset.full(8)).cosets == (ElementSubset.full(8),)

    def test_cosets_refuse_non_normal(self, K1):
        with pytest.raises(NotNormal):
            left_cosets(K1, S(0, 2))

    def test_index_formula(self, K1, K2):
        for G in (K1, K2):
            for N in enumerate_normals(G):
                assert G.order == len(N) * len(left_cosets(G, N))

    def test_quotient_by_01(self, K1):
        Q, proj = quotient(K1, S(0, 1))
        assert Q.order == 4
        assert Q.labels == ("0", "2", "4", "6")
        # K1 restricted to the representatives 0,2,4,6, relabelled 0..3
        assert Q.table.rows() == [[0, 1, 2, 3], [1, 0, 3, 2], [2, 3, 0, 1], [3, 2, 1, 0]]
        assert is_associative(Q.table)
        assert kernel(proj) == S(0, 1)

    def test_quotient_extremes(self, K1):
        Q, proj = quotient(K1, S(0))
        assert Q.table == K1.table
        Q, proj = quotient(K1, ElementSubset.full(8))
        assert Q.order == 1
        assert kernel(proj) == ElementSubset.full(8)

    def test_quotient_refuses_non_normal(self, K1):
        with pytest.raises(NotNormal):
            quotient(K1, S(0, 2))
        with pytest.raises(IllDefinedProduct):
            quotient(K1, S(0, 2), check_normal=False)


class TestHomomorphisms:
    def test_identity_and_constant(self, K1, trivial):
        assert kernel(GyroHomomorphism(K1, K1, tuple(range(8)))) == S(0)
        assert kernel(GyroHomomorphism(K1, trivial, (0,) * 8)) == ElementSubset.full(8)

    def test_not_a_homomorphism(self, K1):
        with pytest.raises(NotAHomomorphism) as exc:
            GyroHomomorphism(K1, K1, (0, 1, 0, 0, 0, 0, 0, 0))
        assert exc.value.witness == (1, 2)

    def test_kernels_are_normal(self, K1, K2):
        for G in (K1, K2):
            for N in enumerate_normals(G):
                _, proj = quotient(G, N)
                K = kernel(proj)
                assert K == N and is_normal(G, K)
