from superlie.builders import build_abelian, build_gl, build_osp
from superlie.core import GradedLieSuperalgebra
from superlie.functors import FunctorOutput, takiff
from superlie.grassmann import grassmann_oracle_check, wedge_sign


def test_wedge_sign():
    assert wedge_sign((1,), (2,)) == 1
    assert wedge_sign((2,), (1,)) == -1
    assert wedge_sign((1, 3), (2,)) == -1
    assert wedge_sign((2, 3), (1,)) == 1
    assert wedge_sign((1,), (1, 2)) == 0
    assert wedge_sign((), (1, 2)) == 1


def test_oracle_agrees():
    for g in (build_gl(1, 1), build_gl(2, 1), build_osp(1, 2)):
        for k in (1, 2, 3):
            rep = grassmann_oracle_check(g, k)
            assert rep.passed and rep.checked == (2**k * g.dim) ** 2


def test_oracle_abelian():
    assert grassmann_oracle_check(build_abelian((2, 1)), 3).passed


def test_oracle_catches_one_flipped_sign():
    g = build_gl(1, 1)
    t = takiff(g, 2)
    consts = {key: dict(v) for key, v in t.algebra.constants.items()}
    key = (t.d((1,), "E12"), t.d((2,), "E21"))
    consts[key] = {k: -c for k, c in consts[key].items()}
    a = t.algebra
    bad = GradedLieSuperalgebra(a.names, a.weights, a.parities, consts, a.generators, a.chi)
    rep = grassmann_oracle_check(g, 2, FunctorOutput(bad, t.provenance, g, g, "T'", 2))
    assert not rep.passed
    assert len(rep.mismatches) == 1
    left, right, got, want = rep.mismatches[0]
    assert (left, right) == (a.names[key[0]], a.names[key[1]])
    assert got == {k: -c for k, c in want.items()}
