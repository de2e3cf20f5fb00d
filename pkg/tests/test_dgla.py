import pytest

from ratlie.dgla import (
    CapExceeded,
    ConstructionContradiction,
    CounterexampleSpec,
    Dgla,
    MalformedDifferential,
    bracket_image_of_diff,
    build_counterexample,
    check_differential,
    choose_y,
    coformality_details,
    coformality_witness,
    counterexample_parts,
    derivation_rule_holds,
    homology,
    ideal_closed_form,
    ideal_span_at_degree,
    is_minimal,
    linear_part,
    quotient_oracle_dims,
    spherical_generators,
    spherical_homology,
    verify_counterexample,
)
from ratlie.freelie import Alphabet, Generator, basis_bigraded, bracket, format_element, gen

A = Generator("a", 3)
B = Generator("b", 3)
AB = Alphabet([A, B])


@pytest.fixture(scope="module")
def small():
    spec = CounterexampleSpec(3, 3, 2, 20)
    return spec, build_counterexample(spec)


def test_degree_mismatch_rejected():
    x = Generator("x", 5)
    with pytest.raises(MalformedDifferential):
        Dgla(Alphabet([A, B, x]), {x: bracket(A, B)}, 10)


def test_d_squared_nonzero_rejected():
    # dy = x, dx = [a,a] gives d^2 y = [a,a] != 0
    x = Generator("x", 7)
    y = Generator("y", 8)
    with pytest.raises(MalformedDifferential):
        Dgla(Alphabet([A, x, y]), {x: bracket(A, A), y: gen(x)}, 10)


def test_zero_differential_homology_is_the_algebra():
    d = Dgla(AB, {}, 10)
    for k in range(1, 10):
        assert homology(d, k)[0] == d.dim(k)


def test_contractible_pair_has_no_homology():
    c = Generator("c", 3)
    x = Generator("x", 4)
    d = Dgla(Alphabet([c, x]), {x: gen(c)}, 12)
    assert not is_minimal(d)
    assert linear_part(d)[x] == {c: 1}
    assert all(homology(d, k)[0] == 0 for k in range(1, 12))
    assert sum(spherical_homology(d, 12).values()) == 0


def test_generators(small):
    spec, d = small
    assert [(g.name, g.degree) for g in d.alphabet] == [("a", 3), ("b", 3), ("x1", 10), ("x3", 16)]
    assert format_element(d.diff[d.alphabet["x1"]]) == "[b,[a,b]]"


def test_cap_too_small():
    with pytest.raises(CapExceeded):
        build_counterexample(CounterexampleSpec(3, 3, 2, 15))


def test_even_degree_spec_rejected():
    with pytest.raises(ValueError):
        CounterexampleSpec(4, 3, 1, 30)


def test_selected_indices():
    d = build_counterexample(CounterexampleSpec(3, 3, js=(3, 5), max_degree=30))
    assert [g.degree for g in d.alphabet][2:] == [16, 22]


def test_differential_and_derivation(small):
    _, d = small
    assert check_differential(d)
    x1 = gen(d.alphabet["x1"])
    assert derivation_rule_holds(d, x1, gen(A))
    assert derivation_rule_holds(d, bracket(A, x1), x1)


def test_homology_at_degree_9(small):
    _, d = small
    assert homology(d, 9)[0] == 1


def test_bracket_image_excludes_y1(small):
    _, d = small
    y1 = d.diff[d.alphabet["x1"]]
    assert y1.expand() not in bracket_image_of_diff(d, 9)
    # d[x1, a] = [y1, a] lands in degree 12
    img = bracket_image_of_diff(d, 12)
    assert bracket(y1, A).expand() in img


def test_spherical(small):
    _, d = small
    sph = spherical_homology(d, 19)
    assert sph[3] == 2 and sum(sph.values()) == 2
    for name in ("x1", "x3"):
        g = d.alphabet[name]
        assert not spherical_generators(d, g.degree)[1][g]


def test_choose_y():
    y1 = choose_y(1, [], A, B)
    assert y1 == bracket(B, bracket(A, B))
    y3 = choose_y(3, [y1], A, B)
    assert format_element(y3) == "[b,[a,[a,[a,b]]]]"
    assert y3.expand() not in ideal_span_at_degree(AB, [y1], 15, B, 2)


def test_choose_y_contradiction_when_layer_is_full():
    y1 = choose_y(1, [], A, B)
    layer = basis_bigraded(AB, 5, B, 2)
    with pytest.raises(ConstructionContradiction):
        choose_y(3, [y1] + layer, A, B)


def test_ideal_layers_match_closed_form():
    ys = []
    for j in (1, 3, 5, 7):
        wl = j + 2
        ideal = ideal_span_at_degree(AB, ys, 3 * wl, B, 2)
        closed = ideal_closed_form(A, ys, wl)
        assert ideal.dim == closed.dim == (j - 1) // 2
        assert len(basis_bigraded(AB, wl, B, 2)) == (j + 1) // 2
        ys.append(choose_y(j, ys, A, B))


def test_quotient_oracle_small():
    y1 = bracket(B, bracket(A, B))
    q = quotient_oracle_dims(A, B, [y1], 12)
    assert q[9] == 1 and q[3] == 2 and q[6] == 3


def test_single_x_is_coformal():
    spec = CounterexampleSpec(3, 3, 1, 20)
    d = build_counterexample(spec)
    assert coformality_witness(d, 19)
    r = verify_counterexample(d, spec)
    assert r.ok, r.checks()


def test_zero_differential_is_coformal():
    assert coformality_witness(Dgla(AB, {}, 10), 9)


def test_second_generator_creates_unmatched_class(small):
    # [b, y3] lies in the ideal of y1, which yields a degree-19 cycle
    # involving x3 that no element of the free algebra on a, b accounts for
    _, d = small
    ok, rows = coformality_details(d, 19)
    bad = [r.degree for r in rows if not r.ok]
    assert not ok and bad == [19]


def test_verification_report_fields():
    spec = CounterexampleSpec(3, 5, 2, 25)
    r = verify_counterexample(build_counterexample(spec), spec)
    assert r.ok
    assert r.spherical_degrees == [3, 5]
    assert r.even_homology_total == 2 and r.odd_homology_total == 2
    assert r.connectivity == 3
    assert r.layer_dims == {1: (1, 0), 3: (2, 1)}


def test_homology_needs_cap(small):
    _, d = small
    with pytest.raises(CapExceeded):
        homology(d, 20)


def test_parts(small):
    _, d = small
    a, b, xs, ys = counterexample_parts(d)
    assert (a, b) == (A, B) and [x.name for x in xs] == ["x1", "x3"] and len(ys) == 2
