import random
from math import inf

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ckdual.abgroup import (
    TRIVIAL,
    Z,
    FgAbGroup,
    OracleLimitError,
    OwnershipError,
    PresentedGroup,
    aut_orbit_oracle,
    canonicalize,
    cyclic,
    direct_sum,
    element_order,
    free_part,
    is_isomorphic,
    pointed_iso,
    quotient_by,
    rank,
    torsion_part,
)
from ckdual.intlinalg import IntMatrix
from ckdual.ktheory import build_hatA, invariant_sheet

from conftest import ALL_ONES_3, EXAMPLE3, all_ones


def chains(max_order=64):
    """Every finite abelian group of order <= max_order, as divisibility chains."""
    out = []

    def grow(chain, order):
        out.append(tuple(chain))
        start = chain[-1] if chain else 2
        for d in range(start, max_order + 1):
            if (not chain or d % chain[-1] == 0) and order * d <= max_order:
                grow(chain + [d], order * d)

    grow([], 1)
    return out


@st.composite
def groups(draw, max_rank=2):
    factors = draw(st.lists(st.integers(1, 6), max_size=3))
    chain, acc = [], 1
    for f in factors:
        acc *= f
        if acc >= 2:
            chain.append(acc)
    return FgAbGroup(draw(st.integers(0, max_rank)), tuple(chain))


@st.composite
def pointed(draw, max_rank=2):
    G = draw(groups(max_rank))
    free = [draw(st.integers(-6, 6)) for _ in range(G.free_rank)]
    tors = [draw(st.integers(0, d - 1)) for d in G.torsion_factors]
    return G, G.element(free, tors)


class TestFgAbGroup:
    def test_validation(self):
        with pytest.raises(ValueError):
            FgAbGroup(0, (1,))
        with pytest.raises(ValueError):
            FgAbGroup(0, (2, 3))
        with pytest.raises(ValueError):
            FgAbGroup(-1)

    def test_rendering(self):
        assert str(TRIVIAL) == "0"
        assert str(Z) == "Z"
        assert str(FgAbGroup(2, (2, 6))) == "Z^2 (+) Z/2 (+) Z/6"

    def test_roundtrip(self):
        G = FgAbGroup(1, (3,))
        assert FgAbGroup.from_dict(G.to_dict()) == G

    @given(groups())
    def test_present_then_canonicalize(self, G):
        assert G.presentation().group == G

    def test_torsion_coords_reduced(self):
        G = cyclic(4)
        assert G.element((), (7,)).torsion_coords == (3,)


class TestCanonicalize:
    def test_identity_relations(self):
        G, f = canonicalize(PresentedGroup(3, IntMatrix.identity(3)))
        assert G == TRIVIAL
        assert f((5, -2, 7)).is_zero

    def test_diag(self):
        G, _ = canonicalize(PresentedGroup(2, IntMatrix.from_rows([[2, 0], [0, 0]])))
        assert G == FgAbGroup(1, (2,))

    def test_example3_hat(self):
        G, _ = canonicalize(PresentedGroup(5, IntMatrix.identity(5) - build_hatA(EXAMPLE3)))
        assert G == Z

    def test_deterministic(self):
        R = IntMatrix.from_rows([[2, 4], [6, 8]])
        assert canonicalize(PresentedGroup(2, R)) == canonicalize(PresentedGroup(2, R))

    @given(st.lists(st.integers(-5, 5), min_size=4, max_size=4), st.lists(st.integers(-5, 5), min_size=2, max_size=2))
    def test_map_is_homomorphism_killing_relations(self, entries, x):
        R = IntMatrix(2, 2, tuple(entries))
        P = PresentedGroup(2, R)
        for j in range(2):
            assert P.element(R.column(j)).is_zero
        y = (x[1], -x[0])
        s = tuple(a + b for a, b in zip(x, y))
        assert P.element(s) == P.element(x) + P.element(y)


class TestElementsAndQuotients:
    def test_orders(self):
        assert element_order(Z.zero()) == 1
        assert element_order(cyclic(4).element((), (1,))) == 4
        assert element_order(Z.element((3,))) == inf

    def test_example3_iota_order(self):
        assert element_order(invariant_sheet(EXAMPLE3).iota_class) == 1

    def test_quotients(self):
        assert quotient_by(Z.element((1,))) == TRIVIAL
        assert quotient_by(Z.zero()) == Z
        for n in range(2, 7):
            assert quotient_by(Z.element((n,))) == cyclic(n)
            assert quotient_by(Z.element((-n,))) == cyclic(n)

    @given(pointed())
    def test_quotient_rank(self, Gg):
        G, g = Gg
        assert quotient_by(G.zero()) == G
        assert rank(quotient_by(g)) in (G.free_rank - 1, G.free_rank)

    @given(pointed())
    def test_order_divides_exponent(self, Gg):
        G, g = Gg
        o = element_order(g)
        if o != inf:
            assert torsion_part(G).exponent % o == 0


class TestParts:
    def test_examples(self):
        assert free_part(FgAbGroup(1, (6,))) == Z
        assert direct_sum(cyclic(2), cyclic(4)) == FgAbGroup(0, (2, 4))
        assert direct_sum(cyclic(2), cyclic(3)) == cyclic(6)

    @pytest.mark.parametrize("n", [2, 3, 4, 5])
    def test_torsion_of_k0_all_ones(self, n):
        assert torsion_part(invariant_sheet(all_ones(n + 1)).k0) == cyclic(n)

    @given(groups(), groups())
    def test_direct_sum_commutes(self, G, H):
        assert direct_sum(G, H) == direct_sum(H, G)
        assert is_isomorphic(direct_sum(G, TRIVIAL), G)


class TestPointedIso:
    def test_sign(self):
        assert pointed_iso(Z, Z.element((1,)), Z, Z.element((-1,)))

    def test_distinguishes_divisibility(self):
        G = cyclic(4)
        assert not pointed_iso(G, G.element((), (1,)), G, G.element((), (2,)))

    def test_all_ones_3(self):
        s = invariant_sheet(ALL_ONES_3)
        assert pointed_iso(s.exts1, s.iota_class, Z, Z.element((2,)))

    def test_ownership(self):
        with pytest.raises(OwnershipError):
            pointed_iso(Z, cyclic(2).zero(), Z, Z.zero())


class TestOrbitOracle:
    def test_examples(self):
        G = cyclic(2)
        assert aut_orbit_oracle(G, G.element((), (1,)), G.element((), (1,)))
        G = cyclic(4)
        assert aut_orbit_oracle(G, G.element((), (1,)), G.element((), (3,)))
        G = FgAbGroup(0, (2, 4))
        assert not aut_orbit_oracle(G, G.element((), (0, 2)), G.element((), (1, 0)))

    def test_limits(self):
        with pytest.raises(OracleLimitError):
            aut_orbit_oracle(Z, Z.zero(), Z.zero())
        G = cyclic(512)
        with pytest.raises(OracleLimitError):
            aut_orbit_oracle(G, G.zero(), G.zero())

    def test_orbit_sizes_of_klein_four(self):
        # Aut(Z/2 + Z/2) = GL_2(F_2) acts transitively on the three nonzero elements
        G = FgAbGroup(0, (2, 2))
        nonzero = [e for e in G.elements() if not e.is_zero]
        assert all(aut_orbit_oracle(G, a, b) for a in nonzero for b in nonzero)
        assert not aut_orbit_oracle(G, G.zero(), nonzero[0])

    def test_agrees_with_criterion_on_sample(self):
        rnd = random.Random(7)
        gs = [FgAbGroup(0, c) for c in chains(64)]
        for _ in range(150):
            G = rnd.choice(gs)
            els = list(G.elements())
            g, h = rnd.choice(els), rnd.choice(els)
            assert aut_orbit_oracle(G, g, h) == pointed_iso(G, g, G, h)
