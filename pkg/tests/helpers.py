"""Z-graded subalgebras of gl(1|1) and graded maps into it, for lift tests."""

from fractions import Fraction

from superlie.builders import SuperMatrix, build_gl, from_matrix_basis
from superlie.morphism import GradedMorphism, GradingMap

BLOCKS = ((1, 0), (1, 1))
MATS = {
    "E11": [[1, 0], [0, 0]],
    "E22": [[0, 0], [0, 1]],
    "E12": [[0, 1], [0, 0]],
    "E21": [[0, 0], [1, 0]],
    "I": [[1, 0], [0, 1]],
}

# name -> list of (basis matrix, degree); odd elements sit in odd degrees
SUBALGEBRAS = {
    "borel": [("E11", 0), ("E22", 0), ("E21", 1)],
    "heisenberg": [("E12", 1), ("E21", 1), ("I", 2)],
    "extended": [("E11", 0), ("E12", 1), ("E21", 1), ("I", 2)],
}


def graded_subalgebra(kind):
    spec = SUBALGEBRAS[kind]
    mats = [SuperMatrix.from_rows(MATS[n], BLOCKS) for n, _ in spec]
    return from_matrix_basis(mats, [n for n, _ in spec], [(d,) for _, d in spec], ("deg",), (1,), kind)


def expand(g, name):
    if name == "I":
        return {g.index("E11"): Fraction(1), g.index("E22"): Fraction(1)}
    return {g.index(name): Fraction(1)}


def automorphism_images(g, a, d, lam):
    """Conjugation by diag(a, d) followed by X -> X + lam * str(X) * I."""
    out = {}
    scale = {"E11": 1, "E22": 1, "E12": Fraction(a) / d, "E21": Fraction(d) / a}
    strace = {"E11": 1, "E22": -1, "E12": 0, "E21": 0}
    for name in ("E11", "E22", "E12", "E21"):
        img = {g.index(name): Fraction(scale[name])}
        if strace[name] and lam:
            for k, v in expand(g, "I").items():
                img[k] = img.get(k, Fraction(0)) + lam * strace[name]
        out[g.index(name)] = {k: v for k, v in img.items() if v}
    return out


def automorphism(g, a, d, lam=0):
    return GradedMorphism.from_images(g, g, GradingMap.identity(), automorphism_images(g, a, d, lam))


def random_psi(kind, a, d, lam):
    """Automorphism of gl(1|1) composed with the inclusion of a graded subalgebra."""
    g = build_gl(1, 1)
    sub = graded_subalgebra(kind)
    auto = automorphism_images(g, a, d, lam)
    images = {}
    for u, name in enumerate(sub.names):
        img = {}
        for k, c in expand(g, name).items():
            for r, x in auto[k].items():
                img[r] = img.get(r, Fraction(0)) + c * x
        images[u] = {k: v for k, v in img.items() if v}
    return GradedMorphism.from_images(sub, g, GradingMap.parity(sub.chi), images)
