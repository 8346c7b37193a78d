import sys
import os
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), "..")))
import pytest
from hypothesis import given, settings as hypothesis_settings, strategies as st

from fockcrystal.core.exceptions import (
    ChargeException, NonStandardSymbolException, NotInImageException, ValidationException
)
from fockcrystal.domain.models.order import NodeOrder
from fockcrystal.domain.models.partition import Bipartition, Charge
from fockcrystal.domain.models.symbol import Symbol
from fockcrystal.services.crystal import enumerate_uglov, sorted_bipartitions
from fockcrystal.services.symbols import (
    canonical_m, to_symbol, from_symbol, theta, tau, upsilon, upsilon_inverse
)

bp = Bipartition.parse


class TestSymbol:
    def test_worked_example_rows(self):
        symbol = to_symbol(bp("[2,2,1|3,2]"), Charge(s0=0, s1=2), m=4)
        assert symbol.top == (8, 6, 3, 2, 1, 0)
        assert symbol.bottom == (5, 4, 2, 0)
        assert symbol.render() == "0 1 2 3 6 8\n0 2 4 5"

    def test_canonical_m(self):
        assert canonical_m(bp("[2,2,1|3,2]"), Charge(s0=0, s1=2)) == 4
        assert canonical_m(bp("[8|4]"), Charge(s0=0, s1=1)) == 2
        assert canonical_m(Bipartition.empty(), Charge(s0=3, s1=5)) == 1

    def test_decoding(self):
        symbol = Symbol(charge=Charge(s0=0, s1=2), m=4, top=(8, 6, 5, 4, 2, 0), bottom=(3, 2, 1, 0))
        assert from_symbol(symbol) == bp("[-|3,2,2,2,1]")

    def test_m_too_small(self):
        with pytest.raises(ValidationException):
            to_symbol(bp("[2,2,1|3,2]"), Charge(s0=0, s1=2), m=3)

    def test_charge_must_be_ordered_and_non_negative(self):
        with pytest.raises(ChargeException):
            to_symbol(bp("[1|-]"), Charge(s0=1, s1=0))
        with pytest.raises(ChargeException):
            to_symbol(bp("[1|-]"), Charge(s0=-1, s1=0))

    def test_malformed_rows_are_rejected(self):
        with pytest.raises(ValueError):
            Symbol(charge=Charge(s0=0, s1=0), m=2, top=(1, 1), bottom=(1, 0))
        with pytest.raises(ValueError):
            Symbol(charge=Charge(s0=0, s1=1), m=2, top=(2, 0), bottom=(1, 0))

    def test_standardness(self):
        assert to_symbol(bp("[2,2,1|3,2]"), Charge(s0=0, s1=2)).is_standard()
        assert not to_symbol(bp("[-|1]"), Charge(s0=0, s1=0)).is_standard()


class TestPairings:
    def test_theta_of_worked_example(self):
        pairing = theta(to_symbol(bp("[2,2,1|3,2]"), Charge(s0=0, s1=2), m=4))
        assert pairing.mapping == {0: 0, 2: 2, 4: 3, 5: 1}
        assert pairing.pairs == [(5, 1), (4, 3)]

    def test_theta_needs_a_standard_symbol(self):
        with pytest.raises(NonStandardSymbolException):
            theta(to_symbol(bp("[-|1]"), Charge(s0=0, s1=0)))

    def test_tau_inverts_the_swap(self):
        symbol = to_symbol(bp("[5|7]"), Charge(s0=0, s1=1))
        assert tau(symbol).pairs == [(6, 9)]


class TestUpsilon:
    @pytest.mark.parametrize("source,charge,image", [
        ("[2,2,1|3,2]", (0, 2), "[-|3,2,2,2,1]"),
        ("[8|4]", (0, 1), "[5|7]"),
        ("[5|7]", (0, 5), "[4|7,1]"),
        ("[4|7,1]", (0, 9), "[4|7,1]"),
        ("[2,1|2,1]", (1, 1), "[2,1|2,1]"),
        ("[-|-]", (0, 3), "[-|-]"),
    ])
    def test_worked_examples(self, source, charge, image):
        s0, s1 = charge
        assert upsilon(bp(source), Charge(s0=s0, s1=s1)) == bp(image)
        assert upsilon_inverse(bp(image), Charge(s0=s0, s1=s1)) == bp(source)

    def test_inverse_recovers_first_example(self):
        assert upsilon_inverse(bp("[5|7]"), Charge(s0=0, s1=1)) == bp("[8|4]")

    def test_upsilon_rejects_non_standard_symbols(self):
        with pytest.raises(NonStandardSymbolException):
            upsilon(bp("[-|1]"), Charge(s0=0, s1=0))

    def test_inverse_outside_the_image(self):
        with pytest.raises(NotInImageException):
            upsilon_inverse(bp("[1|-]"), Charge(s0=0, s1=0))

    def test_preserves_rank(self):
        for bipartition in enumerate_uglov(3, NodeOrder.uglov(0, 1), 7):
            assert upsilon(bipartition, Charge(s0=0, s1=1)).rank == 7


def _uglov_samples(e, s0, s1, n):
    return sorted_bipartitions(enumerate_uglov(e, NodeOrder.uglov(s0, s1), n))


window = st.integers(2, 4).flatmap(
    lambda e: st.tuples(st.just(e), st.integers(0, e - 1)).flatmap(
        lambda pair: st.tuples(st.just(pair[0]), st.integers(0, pair[1]), st.just(pair[1]))
    )
)


@hypothesis_settings(max_examples=60, deadline=None)
@given(cell=window, n=st.integers(0, 7), extra=st.integers(1, 4), data=st.data())
def test_upsilon_does_not_depend_on_m(cell, n, extra, data):
    e, s0, s1 = cell
    bipartition = data.draw(st.sampled_from(_uglov_samples(e, s0, s1, n)))
    charge = Charge(s0=s0, s1=s1)
    assert upsilon(bipartition, charge, m=canonical_m(bipartition, charge) + extra) == upsilon(bipartition, charge)


@hypothesis_settings(max_examples=60, deadline=None)
@given(cell=window, n=st.integers(0, 7), data=st.data())
def test_upsilon_inverse_laws(cell, n, data):
    e, s0, s1 = cell
    bipartition = data.draw(st.sampled_from(_uglov_samples(e, s0, s1, n)))
    charge = Charge(s0=s0, s1=s1)
    image = upsilon(bipartition, charge)
    assert upsilon_inverse(image, charge) == bipartition
    assert upsilon(upsilon_inverse(image, charge), charge) == image


@hypothesis_settings(max_examples=60, deadline=None)
@given(cell=window, n=st.integers(0, 7), data=st.data())
def test_decoding_inverts_encoding(cell, n, data):
    e, s0, s1 = cell
    bipartition = data.draw(st.sampled_from(_uglov_samples(e, s0, s1, n)))
    assert from_symbol(to_symbol(bipartition, Charge(s0=s0, s1=s1))) == bipartition
