from fractions import Fraction

import pytest

from superlie.builders import (
    SuperMatrix,
    build_abelian,
    build_gl,
    build_gl_zgraded,
    build_osp,
    build_sl11,
    from_matrix_basis,
    osp_form,
    osp_matrices,
    osp_residual,
    parse_builtin,
)
from superlie.core import DomainError, InternalConsistencyError, verify_axioms


def matmul2(a, b):
    return [[sum(a[i][k] * b[k][j] for k in range(2)) for j in range(2)] for i in range(2)]


def test_gl11_dims_and_parities():
    g = build_gl(1, 1)
    assert g.dim == 4
    assert sorted(g.parities) == [0, 0, 1, 1]
    assert [g.names[i] for i in g.parity_component(1)] == ["E12", "E21"]


def test_gl11_odd_pair_against_matrix_oracle():
    e12 = [[0, 1], [0, 0]]
    e21 = [[0, 0], [1, 0]]
    # odd-odd supercommutator is the anticommutator
    anti = [[x + y for x, y in zip(r1, r2)] for r1, r2 in zip(matmul2(e12, e21), matmul2(e21, e12))]
    assert anti == [[1, 0], [0, 1]]
    g = build_gl(1, 1)
    assert g.bracket_basis(g.index("E12"), g.index("E21")) == {g.index("E11"): 1, g.index("E22"): 1}
    assert g.bracket_basis(g.index("E11"), g.index("E12")) == {g.index("E12"): 1}


def test_gl_purely_even():
    g = build_gl(2, 0)
    assert g.dim == 4 and not any(g.parities)
    assert verify_axioms(g).passed


def test_gl_rejects_negative():
    with pytest.raises(DomainError):
        build_gl(-1, 2)


def test_glz_support_and_dims():
    a = build_gl_zgraded([1, 1])
    dims = {}
    for w in a.weights:
        dims[w] = dims.get(w, 0) + 1
    assert dims == {(-1,): 1, (0,): 2, (1,): 1}
    # End(V)^1 = Hom(V_0, V_1): odd
    assert a.parities[a.homogeneous_component(a.weight(a.dim - 1))[0]] == 1


def test_glz_single_component():
    a = build_gl_zgraded([3])
    assert a.dim == 9 and set(a.weights) == {(0,)}


def test_glz_even_reading():
    a = build_gl_zgraded([1, 1], super_=False)
    assert not any(a.parities)
    assert verify_axioms(a).passed


def test_osp12_dims():
    a = build_osp(1, 2)
    assert a.dim == 5
    assert sorted(w[0] for w in a.weights) == [-2, -1, 0, 1, 2]


def test_osp_even_part_dimension():
    # so(2) + sp(4) = 1 + 10
    a = build_osp(2, 4)
    assert len(a.parity_component(0)) == 11
    assert len(a.parity_component(1)) == 8


def test_osp_invariance_residuals_vanish():
    for p, q2 in [(1, 2), (2, 2), (1, 4)]:
        gram, _, _ = osp_form(p, q2 // 2)
        mats, _, _ = osp_matrices(p, q2)
        for m in mats:
            assert all(x == 0 for row in osp_residual(m, gram) for x in row)


def test_osp_grading_scan():
    a = build_osp(2, 4)
    for (i, j), vec in a.constants.items():
        s = a.weights[i][0] + a.weights[j][0]
        assert -2 <= s <= 2
        assert all(a.weights[k] == (s,) for k in vec)
    assert verify_axioms(a).passed


def test_osp_rejects_odd_dimension():
    with pytest.raises(DomainError):
        build_osp(1, 3)


def test_abelian():
    z = build_abelian((0, 0))
    assert z.dim == 0 and verify_axioms(z).passed
    a = build_abelian((2, 3))
    assert a.constants == {} and sum(a.parities) == 3


def test_sl11():
    s = build_sl11()
    assert s.bracket_basis(s.index("E12"), s.index("E21")) == {s.index("I"): 1}
    assert verify_axioms(s).passed


def test_parse_builtin():
    assert parse_builtin("gl:2,1").dim == 9
    assert parse_builtin("glz:1,1").dim == 4
    assert parse_builtin("osp:1,2").dim == 5
    assert parse_builtin("abelian:1,1").dim == 2
    for bad in ("gl:1", "foo:1,2", "gl:a,b"):
        with pytest.raises(DomainError):
            parse_builtin(bad)


def test_supermatrix_parity():
    blocks = ((1, 0), (1, 1))
    assert SuperMatrix.from_rows([[1, 0], [0, 2]], blocks).parity() == 0
    assert SuperMatrix.from_rows([[0, 1], [0, 0]], blocks).parity() == 1
    assert SuperMatrix.from_rows([[1, 1], [0, 0]], blocks).parity() is None
    with pytest.raises(DomainError):
        SuperMatrix.from_rows([[1]], blocks)


def test_supercommutator_sign():
    blocks = ((1, 0), (1, 1))
    x = SuperMatrix.from_rows([[0, 1], [0, 0]], blocks)
    assert x.supercommutator(x).is_zero()  # [x, x] = 2 x^2 = 0
    y = SuperMatrix.from_rows([[0, 0], [1, 0]], blocks)
    assert x.supercommutator(y).entries == ((1, 0), (0, 1))


def test_from_matrix_basis_rejects_mixed_and_open_spans():
    blocks = ((1, 0), (1, 1))
    mixed = SuperMatrix.from_rows([[1, 1], [0, 0]], blocks)
    with pytest.raises(DomainError):
        from_matrix_basis([mixed], ["m"])
    x = SuperMatrix.from_rows([[0, 1], [0, 0]], blocks)
    y = SuperMatrix.from_rows([[0, 0], [1, 0]], blocks)
    with pytest.raises(InternalConsistencyError):
        from_matrix_basis([x, y], ["x", "y"])
    with pytest.raises(DomainError):
        from_matrix_basis([x, x.scale(Fraction(2))], ["x", "x2"])
