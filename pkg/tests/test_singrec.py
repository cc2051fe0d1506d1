import random
from fractions import Fraction

import pytest

from translattice.exact import MPoly, QuadElem, parse_poly
from translattice.singrec import (SingularityError, WeightSystem, is_semi_quasihomogeneous,
                                  recognize_A, singular_locus, weight_parts)

from conftest import XYZ, a10a9_sextic, zgh_sextic

XY = ("x", "y")


def P(text, d=0, vars=XY):
    return parse_poly(text, d, vars)


def test_weight_systems():
    assert WeightSystem.A(10).w == (Fraction(1, 2), Fraction(1, 11))
    assert WeightSystem.D(5).w == (Fraction(1, 4), Fraction(3, 8))
    assert WeightSystem.E6().w == (Fraction(1, 3), Fraction(1, 4))
    assert WeightSystem.E7().w == (Fraction(1, 3), Fraction(2, 9))
    assert WeightSystem.E8().w == (Fraction(1, 3), Fraction(1, 5))


def test_weight_parts_quasihomogeneous():
    parts = weight_parts(P("x^2 + y^3"), WeightSystem.A(2))
    assert parts.equal == P("x^2 + y^3") and parts.below.is_zero() and parts.above.is_zero()


def test_weight_parts_square():
    parts = weight_parts(P("x^2 - 2*x*y^2 + y^4 + x*y^3 + y^7"), WeightSystem.A(3))
    assert parts.equal == P("x^2 - 2*x*y^2 + y^4")
    assert parts.above == P("x*y^3 + y^7")


@pytest.mark.parametrize("sign", [1, -1])
def test_weight_parts_of_sextic_in_chart(sign):
    # F = sextic / 10 in the chart x = 1, with weights 1/10 on y and 1/2 on z
    g = (a10a9_sextic(sign) * QuadElem(Fraction(1, 10), 0, 5)).subs({"x": 1}).with_vars(("y", "z"))
    parts = weight_parts(g, WeightSystem.custom(Fraction(1, 10), Fraction(1, 2)))
    s = QuadElem(0, sign, 5)
    expected = (MPoly.var("z", ("y", "z"), 5) ** 2 * ((s * 5 - 9) / 10)
                + MPoly.var("z", ("y", "z"), 5) * MPoly.var("y", ("y", "z"), 5) ** 5 * ((s * 5 - 11) * 2 / 5))
    assert parts.equal == expected
    assert parts.below.is_zero()
    assert is_semi_quasihomogeneous(g, WeightSystem.custom(Fraction(1, 10), Fraction(1, 2)))


def test_weight_parts_partition_random():
    rng = random.Random(0)
    for _ in range(100):
        terms = {(rng.randint(0, 8), rng.randint(0, 8)): QuadElem(rng.randint(-5, 5), rng.randint(-2, 2), 5)
                 for _ in range(6)}
        f = MPoly(XY, terms, 5)
        parts = weight_parts(f, WeightSystem.A(rng.randint(1, 12)))
        assert parts.below + parts.equal + parts.above == f
        keys = [set(p.terms) for p in (parts.below, parts.equal, parts.above)]
        assert not (keys[0] & keys[1] or keys[1] & keys[2] or keys[0] & keys[2])


@pytest.mark.parametrize("text, w, expected", [
    ("x^2 + y^11", WeightSystem.A(10), True),
    ("x^2 - 2*x*y^2 + y^4", WeightSystem.A(3), False),
    ("x^2 + y^3 + y^4", WeightSystem.A(2), True),
    ("x^3 + y^4", WeightSystem.E6(), True),
    ("x^3 + x*y^3", WeightSystem.E7(), True),
    ("x^3 + y^5 + x^2*y", WeightSystem.E8(), False),   # x^2 y has weight < 1
    ("x^4 + x*y^2", WeightSystem.D(5), True),
])
def test_semi_quasihomogeneous(text, w, expected):
    assert is_semi_quasihomogeneous(P(text), w) is expected


@pytest.mark.parametrize("m", range(1, 16))
def test_recognize_normal_forms(m):
    assert recognize_A(P(f"x^2 + y^{m + 1}")).kind == f"A{m}"


def test_recognize_after_square_completion():
    v = recognize_A(P("x^2 - 2*x*y^2 + y^4 - y^11"))
    assert v.kind == "A10" and v.milnor == 10


def test_recognize_two_tangents():
    assert recognize_A(P("x*y + x^3")).kind == "A1"


@pytest.mark.parametrize("c, k, lam", [(3, 2, 1), (-1, 3, 2), (Fraction(1, 2), 4, -3)])
def test_recognize_invariance(c, k, lam):
    f = P("x^2 - 2*x*y^2 + y^4 - y^11")
    X = MPoly.var("x", XY) + MPoly.var("y", XY) ** k * c
    Y = MPoly.var("y", XY) * lam
    assert recognize_A(f.subs({"x": X})).kind == "A10"
    assert recognize_A(f.subs({"y": Y})).kind == "A10"


def test_recognize_swapped_tangent_and_translation():
    f = P("(y - 1)^2 + (x - 2)^7")
    assert recognize_A(f, (2, 1)).kind == "A6"


def test_non_isolated_is_inconclusive():
    v = recognize_A(P("(x - y^2)^2"))
    assert v.kind is None and "non-isolated" in v.reason


def test_recognize_errors():
    with pytest.raises(SingularityError):
        recognize_A(P("x + y^2"))
    with pytest.raises(SingularityError):
        recognize_A(P("x^3 + y^4"))
    with pytest.raises(SingularityError):
        recognize_A(P("x^2 + y^3 + 1"))


@pytest.mark.parametrize("sign", [1, -1])
def test_sextic_equals_z_times_g_plus_h(sign):
    assert zgh_sextic(sign) == a10a9_sextic(sign)


@pytest.mark.parametrize("sign", [1, -1])
def test_sextic_charts(sign):
    F = zgh_sextic(sign)
    at_001 = F.subs({"z": 1}).with_vars(("x", "y"))
    at_100 = F.subs({"x": 1}).with_vars(("y", "z"))
    assert recognize_A(at_001).kind == "A10"
    assert recognize_A(at_100).kind == "A9"


@pytest.mark.parametrize("sign", [1, -1])
def test_sextic_singular_locus(sign):
    pts = singular_locus(zgh_sextic(sign))
    found = {p.format(): p.verdict.kind for p in pts}
    assert found == {"[0:0:1]": "A10", "[1:0:0]": "A9"}


def test_nodal_cubic():
    pts = singular_locus(P("y^2*z - x^2*(x + z)", 0, XYZ))
    assert [(p.format(), p.verdict.kind) for p in pts] == [("[0:0:1]", "A1")]


def test_smooth_conic():
    assert singular_locus(P("x^2 + y^2 - z^2", 0, XYZ)) == []


def test_singular_point_off_chart_origin():
    # cusp at [1:1:1] after translation, tacnode-free
    F = P("(y - z)^2*z - (x - z)^3", 0, XYZ)
    pts = singular_locus(F)
    assert [(p.format(), p.verdict.kind) for p in pts] == [("[1:1:1]", "A2")]


def test_non_reduced_rejected():
    from translattice.errors import InputError
    with pytest.raises(InputError):
        singular_locus(P("(x^2 + y^2 - z^2)^2", 0, XYZ))
