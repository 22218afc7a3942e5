from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from superlie import linalg
from superlie.builders import build_abelian, build_gl, build_gl_zgraded, build_osp
from superlie.core import DomainError, verify_axioms
from superlie.functors import f_prime_n
from superlie.loop import (
    loop_model,
    matrix_realization,
    staircase_blocks,
    triangle_closes,
    verify_loop_isomorphism,
)

SUITE = [build_gl(1, 1), build_gl(2, 1), build_gl_zgraded([1, 1]), build_osp(1, 2)]


def test_loop_model_is_an_algebra():
    for g in SUITE:
        lm = loop_model(g, 3)
        assert verify_axioms(lm.algebra).passed
        assert lm.algebra.dim == f_prime_n(g, 3).algebra.dim


def test_loop_model_brackets_add_degrees():
    g = build_gl(1, 1)
    lm = loop_model(g, 3)
    a = lm.algebra
    u, v = lm.index(1, "E12"), lm.index(1, "E21")
    assert a.bracket_basis(u, v) == {lm.index(2, "E11"): 1, lm.index(2, "E22"): 1}
    assert a.bracket_basis(lm.index(2, "E11"), lm.index(2, "E22")) == {}
    assert a.bracket_basis(lm.index(2, "E11"), lm.index(3, "E12")) == {}


def test_loop_isomorphism_with_rescaling():
    for g in SUITE:
        for n in (2, 3, 4):
            assert verify_loop_isomorphism(f_prime_n(g, n), loop_model(g, n)).passed


def test_loop_map_without_rescaling_fails_in_degree_one():
    g = build_gl(1, 1)
    verdict = verify_loop_isomorphism(f_prime_n(g, 3), loop_model(g, 3), rescale=False)
    assert verdict.bijective and not verdict.passed
    w = verdict.homomorphism.witness
    assert w.weights == ((1,), (1,)) and w.factor == 2


def test_abelian_loop_map_needs_no_rescaling():
    g = build_abelian((1, 1))
    assert verify_loop_isomorphism(f_prime_n(g, 3), loop_model(g, 3), rescale=False).passed


def test_loop_dimension_mismatch():
    g = build_gl(1, 1)
    with pytest.raises(DomainError, match="dimension mismatch"):
        verify_loop_isomorphism(f_prime_n(g, 3), loop_model(g, 2))


def test_staircase_blocks_alternate():
    assert staircase_blocks(2, 1, 3) == [(2, 0), (1, 1), (2, 0), (1, 1)]
    assert staircase_blocks(2, 1, 2, start=1) == [(1, 1), (2, 0), (1, 1)]


@pytest.mark.parametrize("m,n,d", [(1, 1, 2), (1, 1, 3), (2, 1, 2), (1, 2, 3)])
def test_matrix_realization_is_faithful(m, n, d):
    real = matrix_realization(m, n, d)
    assert real.homomorphism == []
    assert real.injective and real.passed
    assert verify_axioms(real.image).passed


def test_printed_staircase_loses_half_the_top_degree():
    real = matrix_realization(1, 1, 2, faithful=False)
    assert real.homomorphism == []
    assert not real.injective and not real.passed
    # the degree 2 block only sees the even-even corner, so E22 drops out
    rank = len(linalg.pivot_rows([m.flat() for m in real.generators], real.generators[0].size ** 2))
    assert rank == real.source.algebra.dim - 1


def test_degree_zero_is_block_diagonal():
    real = matrix_realization(2, 1, 3)
    out = real.source
    blocks = real.block_sizes
    for u, prov in enumerate(out.provenance):
        mat = real.generators[u]
        for r in range(len(blocks)):
            for c in range(len(blocks)):
                if r - c != prov.degree:
                    assert all(x == 0 for row in mat.block(r, c) for x in row)


def test_degree_one_brackets_land_in_degree_two_blocks():
    real = matrix_realization(1, 1, 3)
    out = real.source
    u, v = out.diag(1, "E12"), out.diag(1, "E21")
    br = real.generators[u].supercommutator(real.generators[v])
    assert not br.is_zero()
    for r in range(len(real.block_sizes)):
        for c in range(len(real.block_sizes)):
            if any(x for row in br.block(r, c) for x in row):
                assert r - c == 2


def test_generators_carry_inverse_factorials():
    real = matrix_realization(1, 1, 3)
    mat = real.generators[real.source.diag(3, "E12")]
    nonzero = {x for row in mat.entries for x in row if x}
    assert nonzero == {Fraction(1, 6)}


def test_realization_rejects_small_degree():
    with pytest.raises(DomainError):
        matrix_realization(1, 1, 1)


@pytest.mark.parametrize("m,n,d", [(1, 1, 2), (2, 1, 3)])
def test_triangle_closes(m, n, d):
    real = matrix_realization(m, n, d)
    assert triangle_closes(real, loop_model(build_gl(m, n), d))


@given(st.integers(1, 2), st.integers(1, 2), st.integers(2, 3))
@settings(max_examples=8, deadline=None)
def test_realization_dimension_matches(m, n, d):
    real = matrix_realization(m, n, d)
    assert real.image.dim == real.source.algebra.dim
