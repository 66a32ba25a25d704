import dataclasses

import pytest

from vkh.complex import build_complex
from vkh.cube import build_cube
from vkh.diagram import mirror, parse_cd
from vkh.frobenius import GF, QQ, preset
from vkh.homology import (
    HomologyEntry,
    HomologyError,
    HomologyTable,
    chain_euler_characteristic,
    graded_euler_characteristic,
    homology,
    normalized_jones,
    poincare_polynomial,
    table_difference,
    torsion_polynomial,
    universal_coefficients_mismatches,
)
from vkh.laurent import LaurentPoly2, format_jones, parse_poly
from vkh.snf import smith_normal_form

import published
from helpers import diagram, table

CORPUS = list(published.CODES) + list(published.GAUSS)


def cx_of(name, theory="khovanov"):
    return build_complex(build_cube(diagram(name)), preset(theory))


def test_unknot_table():
    t = table(diagram("Unknot"))
    assert t.entries == {(0, -1): HomologyEntry(1), (0, 1): HomologyEntry(1)}


def test_knot21_table():
    t = table(diagram("Knot21"))
    assert {k for k, e in t.entries.items() if e.free_rank} == {(0, -1), (0, -3), (-2, -6), (-1, -2)}
    assert t.divisors(-1, -4) == (2,)


def test_knot21_differential_has_one_two():
    cx = cx_of("Knot21")
    divisors = smith_normal_form(cx.differential(-2)).divisors
    assert divisors.count(2) == 1


@pytest.mark.parametrize(
    "name", ["Unknot", "Knot21", "Knot36v", "Knot32", "Knot459", "Knot53", "Example1", "Example2", "Example3", "Example4", "Knot41"]
)
def test_published_poincare(name):
    assert str(poincare_polynomial(table(diagram(name)))) == published.POINCARE[name]


@pytest.mark.parametrize("key", list(published.TORSION))
def test_published_torsion(key):
    name, p = key
    assert str(torsion_polynomial(table(diagram(name)), p)) == published.TORSION[key]


def test_published_jones():
    assert format_jones(normalized_jones(table(diagram("Knot21")))) == published.JONES["Knot21"]
    assert format_jones(normalized_jones(table(diagram("Knot36v")))) == published.JONES["Knot36"]
    assert format_jones(normalized_jones(table(diagram("Unknot")))) == "1"


def test_empty_table():
    assert poincare_polynomial(HomologyTable({}, True)) == LaurentPoly2()


def test_torsion_needs_prime():
    with pytest.raises(ValueError):
        torsion_polynomial(table(diagram("Knot21")), 4)


def test_refuses_unverified_complex():
    cube = build_cube(diagram("Knot36v"))
    s = cube.saddles[0]
    bad = build_complex(cube.replace_saddle(dataclasses.replace(s, perm_sign=-s.perm_sign)), preset("khovanov"))
    with pytest.raises(HomologyError):
        homology(bad)


def test_coefficient_change():
    cx = cx_of("Knot21")
    q = homology(cx, QQ)
    assert poincare_polynomial(q) == poincare_polynomial(homology(cx))
    z2 = homology(cx, GF(2))
    assert z2.free_rank(-1, -4) == 1 and z2.free_rank(-2, -4) == 1
    with pytest.raises(HomologyError):
        homology(cx_of("Knot21", "bn1"), QQ)
    with pytest.raises(HomologyError):
        torsion_polynomial(z2, 2)


def test_ungraded_tables():
    lee = homology(cx_of("Knot21", "lee"))
    assert not lee.graded and all(q is None for _, q in lee.entries)
    assert lee.ranks_by_hdeg() == {0: 2}
    with pytest.raises(HomologyError):
        graded_euler_characteristic(lee)


@pytest.mark.parametrize("name", CORPUS)
def test_euler_identity(name):
    cx = cx_of(name)
    assert chain_euler_characteristic(cx) == graded_euler_characteristic(homology(cx, QQ))


@pytest.mark.parametrize("name", CORPUS)
@pytest.mark.parametrize("p", [2, 3])
def test_universal_coefficients(name, p):
    assert universal_coefficients_mismatches(cx_of(name), p) == []


def test_virtualization_invariance():
    assert table(diagram("Knot36")).entries == table(mirror(diagram("Knot36v"))).entries
    assert table(mirror(diagram("Knot36"))).entries == table(diagram("Knot36v")).entries


@pytest.mark.parametrize("name", CORPUS)
def test_mirror_duality(name):
    d = diagram(name)
    assert poincare_polynomial(table(mirror(d))) == poincare_polynomial(table(d)).invert()


def test_table_difference_example2():
    only1, only2 = table_difference(table(diagram("Example1")), table(diagram("Example2")))
    assert only1 == LaurentPoly2()
    assert only2 == sum((parse_poly(t) for t in published.EXAMPLE2_EXTRA), LaurentPoly2())


def test_table_json():
    data = table(diagram("Knot21")).to_json()
    assert {"hdeg": -1, "qdeg": -4, "rank": 0, "divisors": [2]} in data


def test_zero_crossing_homology():
    assert str(poincare_polynomial(table(parse_cd("CD[]")))) == "1/q + q"
