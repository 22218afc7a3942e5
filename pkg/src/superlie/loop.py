"""Loop-algebra model of F'(g) and the block-staircase matrix realization for gl(m|n).

The truncated loop model has basis ``X t^i`` with ``X`` in ``g_{i mod 2}`` and
``0 <= i <= N``, bracket ``[X t^i, Y t^j] = [X, Y] t^{i+j}`` (zero above N).

The staircase realization places a gl(m|n) matrix ``X`` of degree ``i`` on
the i-th block subdiagonal of a lower block-triangular matrix whose diagonal
blocks alternate between sizes m and n.  The block at (row r, col c) receives
the part of ``X`` mapping the parity of block c to the parity of block r.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from . import linalg
from .builders import SuperMatrix, build_gl, from_matrix_basis, gl_matrices, span_coordinates
from .core import DomainError, GradedLieSuperalgebra
from .covering import HomVerdict, check_homomorphism
from .functors import FunctorOutput, f_prime_n
from .morphism import GradedMorphism, GradingMap, component


@dataclass(frozen=True)
class LoopModel:
    base: GradedLieSuperalgebra
    top_degree: int
    algebra: GradedLieSuperalgebra
    basis: tuple[tuple[int, int], ...]  # (degree, base index)

    def index(self, degree: int, base: int | str) -> int:
        if isinstance(base, str):
            base = self.base.index(base)
        return self.basis.index((degree, base))


def loop_model(g: GradedLieSuperalgebra, top_degree: int) -> LoopModel:
    if top_degree < 0:
        raise DomainError("top degree must be non-negative")
    basis = [
        (i, b)
        for i in range(top_degree + 1)
        for b in sorted(g.parity_component(i % 2), key=lambda x: g.names[x])
    ]
    pos = {key: u for u, key in enumerate(basis)}
    consts = {}
    for u, (i, b) in enumerate(basis):
        for v, (j, c) in enumerate(basis):
            if i + j > top_degree:
                continue
            res = g.bracket_basis(b, c)
            if res:
                consts[(u, v)] = {pos[(i + j, e)]: x for e, x in res.items()}
    names = [f"{g.names[b]}t{i}" for i, b in basis]
    alg = GradedLieSuperalgebra(
        names, [(i,) for i, _ in basis], [i % 2 for i, _ in basis], consts, ("t",), (1,),
        f"loop_{top_degree}({g.name})",
    )
    return LoopModel(g, top_degree, alg, tuple(basis))


@dataclass
class LoopVerdict:
    morphism: GradedMorphism
    homomorphism: HomVerdict
    bijective: bool

    @property
    def passed(self) -> bool:
        return self.homomorphism.passed and self.bijective


def loop_map(p: FunctorOutput, lm: LoopModel, rescale: bool = True) -> GradedMorphism:
    """``X'_i -> X t^i / i!`` (or ``X t^i`` without the rescaling)."""
    if not (p.base is lm.base or p.base.structurally_equal(lm.base)):
        raise DomainError("functor output and loop model have different base algebras")
    if p.top_degree != lm.top_degree or p.algebra.dim != lm.algebra.dim:
        raise DomainError(
            f"dimension mismatch: F' of top degree {p.top_degree} (dim {p.algebra.dim})"
            f" against loop model of top degree {lm.top_degree} (dim {lm.algebra.dim})"
        )
    images = {}
    for u, d in enumerate(p.provenance):
        c = Fraction(1, factorial(d.degree)) if rescale else Fraction(1)
        images[u] = {lm.index(d.degree, d.base): c}
    return GradedMorphism.from_images(p.algebra, lm.algebra, GradingMap.identity(), images)


def verify_loop_isomorphism(p: FunctorOutput, lm: LoopModel, rescale: bool = True) -> LoopVerdict:
    f = loop_map(p, lm, rescale)
    bij = all(
        linalg.is_invertible(block, len(component(p.algebra, w))) for w, block in f.blocks.items()
    )
    return LoopVerdict(f, check_homomorphism(f), bij)


# ---------------------------------------------------------------------------
# matrix realization


def staircase_blocks(m: int, n: int, d: int, start: int = 0) -> list[tuple[int, int]]:
    """``d+1`` diagonal blocks alternating m (even) and n (odd), beginning with parity ``start``."""
    sizes = {0: m, 1: n}
    return [(sizes[(r + start) % 2], (r + start) % 2) for r in range(d + 1)]


def _place(rows, x, offsets, parities, i, m):
    """Add ``x`` (an (m+n)-square matrix) at block degree ``i`` of one staircase."""
    span = {0: range(0, m), 1: range(m, len(x))}
    for r in range(i, len(parities)):
        c = r - i
        for a, xa in enumerate(span[parities[r]]):
            for b, xb in enumerate(span[parities[c]]):
                v = x[xa][xb]
                if v:
                    rows[offsets[r] + a][offsets[c] + b] += v


def staircase_matrix(x, m: int, n: int, d: int, i: int, faithful: bool = True) -> SuperMatrix:
    """``X t^i`` as a staircase matrix; ``faithful`` appends the staircase that starts with n."""
    patterns = [staircase_blocks(m, n, d, 0)]
    if faithful:
        patterns.append(staircase_blocks(m, n, d, 1))
    blocks = [b for pat in patterns for b in pat]
    size = sum(s for s, _ in blocks)
    rows = [[Fraction(0)] * size for _ in range(size)]
    shift = 0
    degree_pattern = {}
    base_block = 0
    for pat in patterns:
        offsets, acc = [], shift
        for s, _ in pat:
            offsets.append(acc)
            acc += s
        _place(rows, x, offsets, [p for _, p in pat], i, m)
        for r in range(len(pat)):
            for c in range(r + 1):
                degree_pattern[(base_block + r, base_block + c)] = r - c
        shift = acc
        base_block += len(pat)
    return SuperMatrix.from_rows(rows, blocks, degree_pattern)


@dataclass
class MatrixRealization:
    source: FunctorOutput
    generators: list[SuperMatrix]  # image of each basis vector of F'_d, already divided by i!
    block_sizes: tuple[tuple[int, int], ...]
    image: GradedLieSuperalgebra
    morphism: GradedMorphism
    homomorphism: list[tuple[str, str]]  # failing pairs
    injective: bool
    faithful: bool
    m: int
    n: int

    @property
    def passed(self) -> bool:
        return not self.homomorphism and self.injective


def matrix_realization(m: int, n: int, d: int, faithful: bool = True) -> MatrixRealization:
    """Realize ``F'_d(gl(m|n))`` by staircase matrices via ``X'_i -> M_i(X) / i!``.

    With ``faithful=False`` only the printed staircase (first block of size m)
    is used; its top degree keeps only half of ``g_{d mod 2}``, so that map is
    a homomorphism but not injective.
    """
    if d < 2:
        raise DomainError("matrix realization needs d >= 2")
    if m < 0 or n < 0 or m + n < 1:
        raise DomainError("need m, n >= 0 with m + n >= 1")
    g = build_gl(m, n)
    out = f_prime_n(g, d)
    mats, names = gl_matrices(m, n)
    by_name = {nm: [list(r) for r in mat.entries] for mat, nm in zip(mats, names)}
    gens = []
    for prov in out.provenance:
        x = by_name[g.names[prov.base]]
        gens.append(staircase_matrix(x, m, n, d, prov.degree, faithful).scale(Fraction(1, factorial(prov.degree))))
    alg = out.algebra

    failures = []
    for u in range(alg.dim):
        for v in range(alg.dim):
            lhs = gens[u].supercommutator(gens[v])
            rhs = SuperMatrix.zero(gens[0].block_sizes)
            for w, c in alg.bracket_basis(u, v).items():
                rhs = rhs + gens[w].scale(c)
            if lhs.entries != rhs.entries:
                failures.append((alg.names[u], alg.names[v]))

    size = gens[0].size
    flat = [g_.flat() for g_ in gens]
    independent = linalg.pivot_rows(flat, size * size)
    injective = len(independent) == alg.dim
    image = from_matrix_basis(
        [gens[u] for u in independent],
        [f"M({alg.names[u]})" for u in independent],
        [alg.weights[u] for u in independent],
        ("deg",),
        (1,),
        f"staircase_{d}(gl({m}|{n}))",
    )
    coords = span_coordinates([gens[u] for u in independent])
    images = {u: coords(gens[u]) for u in range(alg.dim)}
    morphism = GradedMorphism.from_images(alg, image, GradingMap.identity(), images)
    return MatrixRealization(
        out, gens, gens[0].block_sizes, image, morphism, failures, injective, faithful, m, n
    )


def triangle_closes(real: MatrixRealization, lm: LoopModel) -> bool:
    """Compare ``X'_i -> M_i(X)/i!`` with ``loop -> matrices`` after ``X'_i -> X t^i / i!``."""
    p = real.source
    mats, names = gl_matrices(real.m, real.n)
    by_name = {nm: [list(r) for r in mat.entries] for mat, nm in zip(mats, names)}
    loop_mats = [
        staircase_matrix(by_name[lm.base.names[b]], real.m, real.n, p.top_degree, i, real.faithful)
        for i, b in lm.basis
    ]
    f = loop_map(p, lm, rescale=True)
    for u, img in enumerate(f.images()):
        acc = SuperMatrix.zero(real.block_sizes)
        for v, c in img.items():
            acc = acc + loop_mats[v].scale(c)
        if acc.entries != real.generators[u].entries:
            return False
    return True
