import math

import pytest

import divalg


def test_projective_plane_hilbert_function():
    p2 = divalg.projective_space(2)
    dims = divalg.hilbert_function(p2, [1, 0, 0], 10)
    assert dims == [math.comb(m + 2, 2) for m in range(11)]


def test_exact_and_bounded_certificates_agree():
    p2 = divalg.projective_space(2)
    exact = divalg.exact_fg_algebra(p2, [1, 0, 0])
    assert exact["kind"] == "exact"
    assert exact["generator_degrees"] == [1, 1, 1]
    assert exact["probe_bound"] is None
    search = divalg.search_algebra_generators(p2, [1, 0, 0], 8)
    assert search["kind"] == "bounded-search"
    assert search["probe_bound"] == 8
    assert sorted(search["generator_degrees"]) == [1, 1, 1]


def test_rational_polytope_needs_degree_two():
    f2 = divalg.hirzebruch(2)
    cert = divalg.exact_fg_algebra(f2, [0, 0, 1, 1])
    assert sorted(cert["generator_degrees"]) == [1, 1, 2]
    assert cert["stabilization_degree"] == 2


def test_fix_mov_on_the_blowup():
    bl = divalg.blowup_p2()
    fix, mov = divalg.fix_mov(bl, [0, 3, 0, 0])
    assert fix == [0, 3, 0, 0]
    assert mov == [0, 0, 0, 0]
    assert divalg.is_ample(bl, [1, 1, 1, 1])


def test_lattice_geometry():
    simplex = [([1, 0], 0), ([0, 1], 0), ([-1, -1], 5)]
    assert len(divalg.lattice_points(simplex)) == 21
    assert sorted(divalg.hilbert_basis([[1, 0], [1, 2]])) == [[1, 0], [1, 1], [1, 2]]


def test_counting_witness():
    alg, mod = divalg.example26_dims(3, 40)
    assert set(alg) == {1}
    assert divalg.growth_degree(mod) == 2
    assert divalg.nonfg_witness(3, 40)["kind"] == "non-fg-witness"


def test_errors_surface_as_python_exceptions():
    p2 = divalg.projective_space(2)
    with pytest.raises(divalg.DivalgError, match="NoSections"):
        divalg.fix_mov(p2, [-1, 0, 0])
    with pytest.raises(divalg.DivalgError):
        divalg.ToricVariety([[1, 0], [0, 1]], [[0, 1]])
