"""Takiff, split, parity change and inverse functors on structure constants.

Every output is a :class:`FunctorOutput`: the new algebra plus, for each new
basis index, where it came from.  ``takiff``/``gr_prime``/``pi_prime`` label
basis vectors by ``(I, b)`` meaning ``d_I(e_b)`` with ``I`` a strictly
increasing tuple of differential labels; ``iota_prime`` labels them by
:class:`DiagonalGenerator`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Union

from .core import (
    DomainError,
    GradedLieSuperalgebra,
    InternalConsistencyError,
    Vector,
    add_into,
    koszul,
)


@dataclass(frozen=True, order=True)
class MultiIndexBasisElement:
    """``d_I(e_b)``: differential labels ``index_set`` applied to base element ``base``."""

    index_set: tuple[int, ...]
    base: int

    def __post_init__(self):
        if any(a >= b for a, b in zip(self.index_set, self.index_set[1:])):
            raise DomainError(f"index set {self.index_set} is not strictly increasing")
        if any(i < 1 for i in self.index_set):
            raise DomainError("differential labels start at 1")

    @property
    def cardinality(self) -> int:
        return len(self.index_set)


@dataclass(frozen=True)
class DiagonalGenerator:
    """``X'_n = sum_{|I|=n-1} d_I(X) + sum_{|J|=n} d_J(X)`` for ``X = e_base``."""

    degree: int
    base: int
    terms: tuple[tuple[int, ...], ...]


Provenance = Union[MultiIndexBasisElement, DiagonalGenerator]


@dataclass(frozen=True)
class FunctorOutput:
    algebra: GradedLieSuperalgebra
    provenance: tuple[Provenance, ...]
    source: "FunctorOutput | GradedLieSuperalgebra"
    base: GradedLieSuperalgebra
    functor_tag: str  # "T'", "gr'", "pi'", "iota'", "Fn"
    k: int

    def __post_init__(self):
        if len(self.provenance) != self.algebra.dim:
            raise DomainError("provenance map must cover the whole basis")
        if len(set(self.provenance)) != len(self.provenance):
            raise DomainError("provenance map must be injective")

    def index_of(self, prov: Provenance) -> int:
        try:
            return self._lookup[prov]
        except AttributeError:
            object.__setattr__(self, "_lookup", {p: i for i, p in enumerate(self.provenance)})
            return self._lookup[prov]

    def d(self, index_set, base: int | str) -> int:
        """Index of ``d_I(e_base)`` in a multi-index output."""
        if isinstance(base, str):
            base = self.base.index(base)
        return self.index_of(MultiIndexBasisElement(tuple(index_set), base))

    def diag(self, degree: int, base: int | str) -> int:
        """Index of the diagonal generator ``X'_degree`` for ``X = e_base``."""
        if isinstance(base, str):
            base = self.base.index(base)
        for i, p in enumerate(self.provenance):
            if isinstance(p, DiagonalGenerator) and p.degree == degree and p.base == base:
                return i
        raise DomainError(f"no diagonal generator of degree {degree} over base {base}")

    @property
    def top_degree(self) -> int:
        return self.k + 1


def _subsets(k: int):
    for p in range(k + 1):
        yield from combinations(range(1, k + 1), p)


def _d_name(index_set: tuple[int, ...], base_name: str) -> str:
    if not index_set:
        return base_name
    return "".join(f"d{i}" for i in index_set) + "." + base_name


def _as_output(g) -> FunctorOutput:
    if isinstance(g, FunctorOutput):
        return g
    prov = tuple(MultiIndexBasisElement((), i) for i in range(g.dim))
    return FunctorOutput(g, prov, g, g, "T'", 0)


def _reindexed(
    names, weights, parities, constants, order, generators, chi, name
) -> tuple[GradedLieSuperalgebra, list[int]]:
    """Permute a basis into ``order`` (a list of old indices)."""
    new_of = {old: new for new, old in enumerate(order)}
    consts = {}
    for (i, j), vec in constants.items():
        consts[(new_of[i], new_of[j])] = {new_of[k]: v for k, v in vec.items()}
    alg = GradedLieSuperalgebra(
        [names[o] for o in order],
        [weights[o] for o in order],
        [parities[o] for o in order],
        consts,
        generators,
        chi,
        name,
    )
    return alg, order


# ---------------------------------------------------------------------------
# Takiff


def takiff(g: GradedLieSuperalgebra, k: int) -> FunctorOutput:
    """k-fold iterated antitangent (Takiff) superalgebra of ``g``.

    Built by applying the single-differential construction k times:
    ``[x, d y] = (-1)^{|x|} d[x, y]``, ``[d x, y] = d[x, y]``, ``[d x, d y] = 0``,
    with ``d_j`` of the j-th step odd.  The basis is then relabelled so that
    ``(I, b)`` is ``d_{i1} d_{i2} ... d_{ip}(e_b)`` for ``i1 < ... < ip`` (the
    left-most differential outermost), which costs the sign ``(-1)^{p(p-1)/2}``
    relative to the order in which the steps applied them.
    """
    if k < 1:
        raise DomainError("takiff needs k >= 1")
    # labels: (applied differentials in application order, base index)
    labels: list[tuple[tuple[int, ...], int]] = [((), b) for b in range(g.dim)]
    pars = list(g.parities)
    consts: dict[tuple[int, int], Vector] = {key: dict(v) for key, v in g.constants.items()}
    for step in range(1, k + 1):
        n = len(labels)
        labels = labels + [(lab[0] + (step,), lab[1]) for lab in labels]
        pars = pars + [(p + 1) % 2 for p in pars]
        new: dict[tuple[int, int], Vector] = {}
        for (i, j), vec in consts.items():
            new[(i, j)] = vec
            # [x, d y] = (-1)^{|x|} d [x, y]
            s = koszul(pars[i], 1)
            new[(i, j + n)] = {kk + n: s * v for kk, v in vec.items()}
            # [d x, y] = d [x, y]
            new[(i + n, j)] = {kk + n: v for kk, v in vec.items()}
        consts = new

    def sign(seq) -> int:
        p = len(seq)
        return -1 if (p * (p - 1) // 2) % 2 else 1

    sgn = [sign(seq) for seq, _ in labels]
    signed = {}
    for (i, j), vec in consts.items():
        out = {}
        for kk, v in vec.items():
            out[kk] = sgn[i] * sgn[j] * sgn[kk] * v
        signed[(i, j)] = out

    gens = g.generators + tuple(f"d{i}" for i in range(1, k + 1))
    chi = None if g.chi is None else g.chi + (1,) * k
    weights, names = [], []
    for seq, b in labels:
        ind = tuple(1 if i in seq else 0 for i in range(1, k + 1))
        weights.append(g.weights[b] + ind)
        names.append(_d_name(seq, g.names[b]))
    prov = [MultiIndexBasisElement(seq, b) for seq, b in labels]
    order = sorted(range(len(labels)), key=lambda i: (weights[i], prov[i].index_set, g.names[prov[i].base]))
    alg, order = _reindexed(
        names, weights, pars, signed, order, gens, chi, f"T'^{k}({g.name})"
    )
    return FunctorOutput(alg, tuple(prov[o] for o in order), g, g, "T'", k)


# ---------------------------------------------------------------------------
# split


def gr_prime(t: FunctorOutput | GradedLieSuperalgebra) -> FunctorOutput:
    """Kill every bracket of two odd elements."""
    t = _as_output(t)
    a = t.algebra
    consts = {
        (i, j): vec
        for (i, j), vec in a.constants.items()
        if not (a.parities[i] and a.parities[j])
    }
    alg = GradedLieSuperalgebra(
        a.names, a.weights, a.parities, consts, a.generators, a.chi, f"gr'({a.name})"
    )
    return FunctorOutput(alg, t.provenance, t, t.base, "gr'", t.k)


# ---------------------------------------------------------------------------
# parity change


def pi_prime(h_in: FunctorOutput, k: int) -> FunctorOutput:
    """Declare all differentials even and rebuild the bracket from the base.

    For ``d_I(X)``, ``d_J(Y)`` with ``X`` in parity ``i``, ``Y`` in parity ``j``:
    zero if ``I`` and ``J`` meet; zero if ``|I| + i`` and ``|J| + j`` are both
    odd; otherwise ``d_{I u J}([X, Y])`` with no sign.  The output is graded by
    ``alpha`` (marking odd elements of the split algebra) and ``beta1..betak``,
    all of odd parity, so the parity of ``d_I(X)`` is ``|X|``.
    """
    if not isinstance(h_in, FunctorOutput) or h_in.functor_tag != "gr'":
        raise DomainError("pi_prime is only defined on outputs of gr_prime(takiff(g, k))")
    if not all(isinstance(p, MultiIndexBasisElement) for p in h_in.provenance):
        raise DomainError("pi_prime input lacks multi-index provenance")
    if h_in.k != k:
        raise DomainError(f"pi_prime called with k={k} on an input with {h_in.k} differentials")
    g = h_in.base
    prov = list(h_in.provenance)
    idx = {p: i for i, p in enumerate(prov)}
    tau = [(len(p.index_set) + g.parities[p.base]) % 2 for p in prov]

    consts: dict[tuple[int, int], Vector] = {}
    for u, pu in enumerate(prov):
        su = set(pu.index_set)
        for v, pv in enumerate(prov):
            if tau[u] and tau[v]:
                continue
            if su.intersection(pv.index_set):
                continue
            c = g.constants.get((pu.base, pv.base))
            if not c:
                continue
            union = tuple(sorted(su.union(pv.index_set)))
            consts[(u, v)] = {idx[MultiIndexBasisElement(union, e)]: x for e, x in c.items()}

    gens = ("alpha",) + tuple(f"beta{i}" for i in range(1, k + 1))
    weights = []
    for u, p in enumerate(prov):
        weights.append((tau[u],) + tuple(1 if i in p.index_set else 0 for i in range(1, k + 1)))
    pars = [g.parities[p.base] for p in prov]
    names = list(h_in.algebra.names)
    order = sorted(range(len(prov)), key=lambda i: (weights[i], prov[i].index_set, g.names[prov[i].base]))
    alg, order = _reindexed(
        names, weights, pars, consts, order, gens, (1,) * (k + 1), f"pi'({h_in.algebra.name})"
    )
    return FunctorOutput(alg, tuple(prov[o] for o in order), h_in, g, "pi'", k)


# ---------------------------------------------------------------------------
# inverse


def diagonal_terms(n: int, k: int) -> tuple[tuple[int, ...], ...]:
    """Index sets of size n-1 and n inside {1..k}, in lexicographic order."""
    terms = []
    for size in (n - 1, n):
        if 0 <= size <= k:
            terms.extend(combinations(range(1, k + 1), size))
    return tuple(terms)


def iota_prime(h_in: FunctorOutput, k: int) -> FunctorOutput:
    """Z-graded subalgebra of diagonal generators ``X'_n``, ``0 <= n <= k+1``.

    Brackets are computed by restricting the ambient bracket and reading the
    result back in the diagonal basis; failure to close raises
    :class:`InternalConsistencyError`.
    """
    if not isinstance(h_in, FunctorOutput) or h_in.functor_tag != "pi'":
        raise DomainError("iota_prime is only defined on outputs of pi_prime")
    if h_in.k != k:
        raise DomainError(f"iota_prime called with k={k} on an input with {h_in.k} differentials")
    g = h_in.base
    amb = h_in.algebra
    gens: list[DiagonalGenerator] = []
    vecs: list[Vector] = []
    for n in range(k + 2):
        terms = diagonal_terms(n, k)
        for b in sorted(g.parity_component(n % 2), key=lambda i: g.names[i]):
            gens.append(DiagonalGenerator(n, b, terms))
            vecs.append({h_in.index_of(MultiIndexBasisElement(t, b)): Fraction(1) for t in terms})
    by_degree: dict[int, list[int]] = {}
    for i, dg in enumerate(gens):
        by_degree.setdefault(dg.degree, []).append(i)
    # a representative ambient coordinate for each diagonal generator
    lead = [h_in.index_of(MultiIndexBasisElement(dg.terms[0], dg.base)) for dg in gens]

    consts: dict[tuple[int, int], Vector] = {}
    for u, gu in enumerate(gens):
        for v, gv in enumerate(gens):
            res = amb.bracket_vectors(vecs[u], vecs[v])
            if not res:
                continue
            deg = gu.degree + gv.degree
            out: Vector = {}
            residual = dict(res)
            for w in by_degree.get(deg, []):
                c = residual.get(lead[w])
                if c:
                    out[w] = c
                    add_into(residual, vecs[w], -c)
            if residual:
                raise InternalConsistencyError(
                    f"bracket of {g.names[gu.base]}'{gu.degree} and {g.names[gv.base]}'{gv.degree}"
                    " is not in the span of the diagonal generators"
                )
            consts[(u, v)] = out

    names = [f"{g.names[dg.base]}'{dg.degree}" for dg in gens]
    weights = [(dg.degree,) for dg in gens]
    pars = [dg.degree % 2 for dg in gens]
    alg = GradedLieSuperalgebra(names, weights, pars, consts, ("deg",), (1,), f"iota'({amb.name})")
    return FunctorOutput(alg, tuple(gens), h_in, g, "iota'", k)


def f_prime_n(g: GradedLieSuperalgebra, n: int) -> FunctorOutput:
    """The composite ``iota' . pi' . gr' . T'^(n-1)``: support in ``{0..n}``."""
    if n < 2:
        raise DomainError("F'_n needs n >= 2")
    k = n - 1
    out = iota_prime(pi_prime(gr_prime(takiff(g, k)), k), k)
    alg = out.algebra.renamed(f"F'_{n}({g.name})")
    return FunctorOutput(alg, out.provenance, out, g, "Fn", k)


def binomial_bracket_expected(out: FunctorOutput, u: int, v: int) -> Vector:
    """``C(i+j, i) * ([X, Y])'_{i+j}`` computed straight from the base constants.

    Independent of the ambient restriction used by :func:`iota_prime`; a
    result degree beyond the top degree gives zero.
    """
    gu, gv = out.provenance[u], out.provenance[v]
    deg = gu.degree + gv.degree
    if deg > out.top_degree:
        return {}
    coef = comb(deg, gu.degree)
    res: Vector = {}
    for e, x in out.base.bracket_basis(gu.base, gv.base).items():
        res[out.diag(deg, e)] = coef * x
    return res


# ---------------------------------------------------------------------------
# maps between outputs


def truncation_projection(big: FunctorOutput, small: FunctorOutput):
    """``F'_{n+1}(g) -> F'_n(g)``: identity on ``X'_i`` for ``i <= n``, zero on the top degree."""
    from .morphism import GradedMorphism, GradingMap

    if big.functor_tag not in ("Fn", "iota'") or small.functor_tag not in ("Fn", "iota'"):
        raise DomainError("truncation is defined between outputs of f_prime_n")
    if big.k != small.k + 1:
        raise DomainError("truncation goes from F'_{n+1} to F'_n")
    images = {}
    for u, p in enumerate(big.provenance):
        if p.degree <= small.top_degree:
            images[u] = {small.diag(p.degree, big.base.names[p.base]): Fraction(1)}
    return GradedMorphism.from_images(big.algebra, small.algebra, GradingMap.identity(), images)


def _check_hom(f) -> None:
    from .covering import check_homomorphism

    verdict = check_homomorphism(f)
    if not verdict.passed:
        raise DomainError(f"map is not a homomorphism: {verdict.describe_first()}")


def map_through(f, functor_tag: str, param: int, outputs: tuple[FunctorOutput, FunctorOutput] | None = None):
    """Induced morphism ``functor(g) -> functor(g2)`` for a homomorphism ``f: g -> g2``.

    ``param`` is ``k`` for ``T'``, ``gr'``, ``pi'`` and ``iota'`` and ``n`` for
    ``Fn``.  On multi-index outputs ``d_I(X) -> d_I(f(X))``; on diagonal
    outputs ``X'_i -> (f(X))'_i``.  The result is checked to be a homomorphism.
    """
    from .morphism import GradedMorphism, GradingMap

    _check_hom(f)
    for i, img in enumerate(f.images()):
        if any(f.target.parities[r] != f.source.parities[i] for r in img):
            raise DomainError("functors only act on parity-preserving maps")
    g, g2 = f.source, f.target
    if outputs is None:
        builders = {
            "T'": lambda a: takiff(a, param),
            "gr'": lambda a: gr_prime(takiff(a, param)),
            "pi'": lambda a: pi_prime(gr_prime(takiff(a, param)), param),
            "iota'": lambda a: iota_prime(pi_prime(gr_prime(takiff(a, param)), param), param),
            "Fn": lambda a: f_prime_n(a, param),
        }
        if functor_tag not in builders:
            raise DomainError(f"unknown functor tag {functor_tag!r}")
        src, tgt = builders[functor_tag](g), builders[functor_tag](g2)
    else:
        src, tgt = outputs
    fimg = f.images()
    images: dict[int, Vector] = {}
    for u, p in enumerate(src.provenance):
        out: Vector = {}
        for e, c in fimg[p.base].items():
            if isinstance(p, DiagonalGenerator):
                out[tgt.diag(p.degree, e)] = c
            else:
                out[tgt.index_of(MultiIndexBasisElement(p.index_set, e))] = c
        images[u] = out
    if functor_tag in ("T'", "gr'"):
        k = src.k
        table = {}
        for w in set(src.algebra.weights):
            base_w, ind = w[: len(w) - k], w[len(w) - k :]
            img = f.grading.image(base_w)
            if isinstance(img, int):
                raise DomainError("functor of a map needs a weight-valued grading map")
            table[w] = tuple(img) + tuple(ind)
        grading = GradingMap.from_table(table)
    else:
        grading = GradingMap.identity()
    m = GradedMorphism.from_images(src.algebra, tgt.algebra, grading, images)
    _check_hom(m)
    return m
