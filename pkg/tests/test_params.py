import numpy as np
import pytest
from hypothesis import given, strategies as st

from asymtop.errors import WeylViolation
from asymtop.params import (
    SpeciesExponents,
    d_offset,
    parse_alpha,
    physical_from_canonical,
    species_for_degree,
    validate_parameters,
)

alphas = st.tuples(
    st.floats(0.01, 10), st.floats(0.01, 10), st.floats(0.01, 10)
).map(sorted).filter(lambda a: a[0] < a[1] < a[2] and a[1] - a[0] > 1e-3 and a[2] - a[1] > 1e-3)


def test_validate_parameters_beta():
    p = validate_parameters(1, 2, 3)
    assert p.beta_sq == 1.0
    assert p.total == 6.0


@pytest.mark.parametrize("a", [(2, 1, 3), (1, 1, 3), (1, 3, 3), (0, 1, 2), (-1, 1, 2), (1, float("nan"), 3)])
def test_weyl_violation(a):
    with pytest.raises(WeylViolation):
        validate_parameters(*a)


def test_parse_alpha_names_chamber():
    with pytest.raises(WeylViolation, match="Lambda\\^3"):
        parse_alpha("3,2,1")
    assert parse_alpha(" 1, 2 ,3").alpha == (1.0, 2.0, 3.0)


def test_species_k1():
    ent = species_for_degree(1)
    assert [e.gamma.total for e in ent] == [1, 1, 1]
    assert all(e.m == 0 and e.count == 1 for e in ent)


def test_species_k2():
    ent = species_for_degree(2)
    assert ent[0].gamma == SpeciesExponents(0, 0, 0) and ent[0].m == 1 and ent[0].count == 2
    assert [(e.gamma.total, e.m, e.count) for e in ent[1:]] == [(2, 0, 1)] * 3


def test_species_k4():
    ent = species_for_degree(4)
    by_species = {}
    for e in ent:
        by_species[e.gamma.species] = by_species.get(e.gamma.species, 0) + e.count
    assert by_species == {1: 3, 3: 6}


@pytest.mark.parametrize("k", range(0, 60))
def test_species_counts_sum(k):
    ent = species_for_degree(k)
    assert sum(e.count for e in ent) == 2 * k + 1
    allowed = {1, 3} if k % 2 == 0 else {2, 4}
    assert {e.gamma.species for e in ent} <= allowed
    for e in ent:
        assert (k - e.gamma.total) % 2 == 0 and e.m == (k - e.gamma.total) // 2


def test_species_formula_counts():
    # k/2+1, 3(k+1)/2, 3k/2, (k-1)/2 per species
    for k in range(3, 40):
        c = {}
        for e in species_for_degree(k):
            c[e.gamma.species] = c.get(e.gamma.species, 0) + e.count
        if k % 2 == 0:
            assert c == {1: k // 2 + 1, 3: 3 * k // 2}
        else:
            assert c == {2: 3 * (k + 1) // 2, 4: (k - 1) // 2}


def test_rho_weights():
    g = SpeciesExponents(1, 0, 1)
    assert tuple(g.rho) == (1.5, 0.5, 1.5)
    assert g.rho.total == g.total + 1.5


def table_row(g, a0, a1, a2):
    """lambda - nu from the species table, written out row by row."""
    return {
        (0, 0, 0): 0.0,
        (1, 0, 0): a1 + a2,
        (0, 1, 0): a0 + a2,
        (0, 0, 1): a0 + a1,
        (0, 1, 1): 4 * a0 + a1 + a2,
        (1, 0, 1): a0 + 4 * a1 + a2,
        (1, 1, 0): a0 + a1 + 4 * a2,
        (1, 1, 1): 4 * (a0 + a1 + a2),
    }[g]


def test_d_offset_examples(p123):
    assert d_offset(p123, SpeciesExponents(0, 0, 0)) == 0
    assert d_offset(p123, SpeciesExponents(1, 0, 0)) == 5
    assert d_offset(p123, SpeciesExponents(1, 1, 1)) == 24


@given(alphas)
def test_d_offset_matches_table(a):
    p = validate_parameters(*a)
    for g in [(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1), (0, 1, 1), (1, 0, 1), (1, 1, 0), (1, 1, 1)]:
        assert d_offset(p, SpeciesExponents(*g)) == pytest.approx(table_row(g, *a), rel=1e-14, abs=1e-14)


def test_physical_from_canonical_examples(p123):
    assert physical_from_canonical(0.0, 0.0, SpeciesExponents(0, 1, 1), p123) == 9
    assert physical_from_canonical(0.0, 0.0, SpeciesExponents(1, 0, 0), p123) == 5
    lam = physical_from_canonical(np.sqrt(3) / 2, 1.5, SpeciesExponents(0, 0, 0), p123)
    assert lam == pytest.approx(12 + 2 * np.sqrt(3), abs=1e-13)


@given(alphas, st.floats(-5, 5), st.floats(0, 100), st.floats(0.001, 3))
def test_physical_affine_increasing(a, nu, mu, dnu):
    p = validate_parameters(*a)
    g = SpeciesExponents(0, 1, 0)
    lo = physical_from_canonical(nu, mu, g, p)
    hi = physical_from_canonical(nu + dnu, mu, g, p)
    assert hi > lo
    assert hi - lo == pytest.approx(4 * dnu * p.span, rel=1e-9)
