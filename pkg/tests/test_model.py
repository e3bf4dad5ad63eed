import pytest
from hypothesis import given
from hypothesis import strategies as st

from cabl.model import (
    BiasCorrection,
    Boundary,
    Element,
    ElementSeries,
    Kind,
    MatchCriterion,
    RawMeasurement,
    Specimen,
    criterion_preset,
    series_interval,
)


def series(mean, se, n=1, element=Element.SB):
    df = None if n == 1 else n - 1
    return ElementSeries(element=element, mean=mean, se=se, df=df, n=n)


class TestElement:
    def test_from_symbol(self):
        assert Element.from_symbol("Sb") is Element.SB
        assert Element.from_symbol("Cd") is Element.CD

    def test_unknown_symbol(self):
        with pytest.raises(ValueError, match="unknown element"):
            Element.from_symbol("Pb")

    def test_panel_is_seven_elements(self):
        assert len(Element) == 7


class TestSeriesInterval:
    def test_ce567_antimony(self):
        assert series_interval(series(602.0, 4.0), 4) == (586.0, 618.0)

    def test_ce840_antimony(self):
        assert series_interval(series(642.0, 6.0, n=3), 4) == (618.0, 666.0)

    def test_zero_width(self):
        assert series_interval(series(10.0, 0.0), 7.0) == (10.0, 10.0)

    def test_k_must_be_positive(self):
        with pytest.raises(ValueError):
            series_interval(series(10.0, 1.0), 0.0)

    @given(
        mean=st.floats(0.01, 1e5),
        se=st.floats(0.0, 1e3),
        k=st.floats(0.01, 50.0),
        k2=st.floats(0.01, 50.0),
    )
    def test_width_and_symmetry(self, mean, se, k, k2):
        lo, hi = series_interval(series(mean, se), k)
        # width is 2*k*se exactly, up to cancellation at the mean's ulp scale
        assert hi - lo == pytest.approx(2 * k * se, rel=1e-12, abs=4e-12 * mean)
        assert (lo + hi) / 2 == pytest.approx(mean, rel=1e-9)
        lo2, hi2 = series_interval(series(mean, se), max(k, k2))
        assert lo2 <= lo + 1e-12 * max(1.0, abs(lo)) or k >= k2
        assert hi2 - lo2 >= hi - lo - 1e-9


class TestValidation:
    def test_series_mean_positive(self):
        with pytest.raises(ValueError):
            ElementSeries(Element.AG, mean=0.0, se=1.0)

    def test_series_negative_se(self):
        with pytest.raises(ValueError):
            ElementSeries(Element.AG, mean=1.0, se=-0.1)

    def test_series_df_must_match_n(self):
        with pytest.raises(ValueError):
            ElementSeries(Element.AG, mean=1.0, se=0.1, df=3, n=3)

    def test_poisson_row_needs_sigma(self):
        with pytest.raises(ValueError):
            RawMeasurement("x", Element.AG, value=1.0, sigma=None)

    def test_replicate_row_rejects_sigma(self):
        from cabl.model import Basis

        with pytest.raises(ValueError):
            RawMeasurement("x", Element.AG, 1.0, sigma=0.5, basis=Basis.REPLICATE_MEMBER)

    def test_bias_range_ordering(self):
        with pytest.raises(ValueError):
            BiasCorrection(Element.SB, 0.06, 0.02)

    def test_specimen_series_key_must_agree(self):
        with pytest.raises(ValueError):
            Specimen("x", Kind.FRAGMENT, series={Element.AG: series(1.0, 0.1)})


class TestCriterion:
    def test_panel_sorted_and_deduped(self):
        c = MatchCriterion(k=2, elements=(Element.SB, Element.AG, Element.SB))
        assert c.elements == (Element.AG, Element.SB)

    def test_empty_panel_rejected(self):
        with pytest.raises(ValueError):
            MatchCriterion(k=2, elements=())

    def test_guinn4_preset(self):
        c = criterion_preset("guinn4")
        assert c.k == 4.0
        assert c.bias is None
        assert c.boundary is Boundary.CLOSED
        assert set(c.elements) == {Element.SB, Element.AG}

    def test_nrc2_preset_carries_bias(self):
        c = criterion_preset("nrc2")
        assert c.k == 2.0
        assert c.bias_for(Element.SB).c_hi == 0.054
        assert c.bias_for(Element.AG).c_lo == 0.055

    def test_unknown_preset(self):
        with pytest.raises(ValueError):
            criterion_preset("fbi7")
