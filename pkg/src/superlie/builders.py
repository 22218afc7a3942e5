"""Concrete algebras: gl(m|n), Z-graded End(V), osp(V,Q), abelian.

Matrix algebras are built through :func:`from_matrix_basis`, which takes
homogeneous supermatrices, forms all supercommutators and reads off the
structure constants in the given basis (failing loudly if the span is not
closed).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Mapping, Sequence

from . import linalg
from .core import DomainError, GradedLieSuperalgebra, InternalConsistencyError, koszul


@dataclass(frozen=True)
class SuperMatrix:
    """Square rational matrix with a diagonal block pattern of (size, parity)."""

    entries: tuple[tuple[Fraction, ...], ...]
    block_sizes: tuple[tuple[int, int], ...]
    degree_pattern: Mapping[tuple[int, int], int] | None = None

    def __post_init__(self):
        n = sum(s for s, _ in self.block_sizes)
        if len(self.entries) != n or any(len(r) != n for r in self.entries):
            raise DomainError(f"matrix size does not match block pattern of total size {n}")

    @classmethod
    def from_rows(cls, rows, block_sizes, degree_pattern=None) -> "SuperMatrix":
        return cls(
            tuple(tuple(Fraction(x) for x in r) for r in rows),
            tuple((int(s), int(p) % 2) for s, p in block_sizes),
            degree_pattern,
        )

    @classmethod
    def zero(cls, block_sizes) -> "SuperMatrix":
        n = sum(s for s, _ in block_sizes)
        return cls.from_rows([[0] * n for _ in range(n)], block_sizes)

    @property
    def size(self) -> int:
        return len(self.entries)

    def index_parities(self) -> list[int]:
        out = []
        for s, p in self.block_sizes:
            out.extend([p] * s)
        return out

    def block_offsets(self) -> list[int]:
        offs, acc = [], 0
        for s, _ in self.block_sizes:
            offs.append(acc)
            acc += s
        return offs

    def block(self, r: int, c: int) -> list[list[Fraction]]:
        offs = self.block_offsets()
        rs, cs = self.block_sizes[r][0], self.block_sizes[c][0]
        return [list(self.entries[offs[r] + i][offs[c] : offs[c] + cs]) for i in range(rs)]

    def parity(self) -> int | None:
        """Parity of a homogeneous matrix; ``None`` when it mixes parities.

        The zero matrix reports 0.
        """
        ip = self.index_parities()
        seen = set()
        for i, row in enumerate(self.entries):
            for j, x in enumerate(row):
                if x:
                    seen.add((ip[i] + ip[j]) % 2)
        if len(seen) > 1:
            return None
        return seen.pop() if seen else 0

    def is_zero(self) -> bool:
        return not any(x for row in self.entries for x in row)

    def _like(self, rows) -> "SuperMatrix":
        return SuperMatrix(tuple(tuple(r) for r in rows), self.block_sizes, self.degree_pattern)

    def __add__(self, other: "SuperMatrix") -> "SuperMatrix":
        return self._like(
            [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.entries, other.entries)]
        )

    def __sub__(self, other: "SuperMatrix") -> "SuperMatrix":
        return self._like(
            [[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(self.entries, other.entries)]
        )

    def scale(self, c) -> "SuperMatrix":
        c = Fraction(c)
        return self._like([[c * x for x in r] for r in self.entries])

    def __matmul__(self, other: "SuperMatrix") -> "SuperMatrix":
        return self._like(linalg.matmul([list(r) for r in self.entries], [list(r) for r in other.entries]))

    def supercommutator(self, other: "SuperMatrix") -> "SuperMatrix":
        p, q = self.parity(), other.parity()
        if p is None or q is None:
            raise DomainError("supercommutator needs homogeneous matrices")
        prod = self @ other
        rev = other @ self
        return prod - rev.scale(koszul(p, q))

    def flat(self) -> list[Fraction]:
        return [x for r in self.entries for x in r]


def elementary(n: int, a: int, b: int, block_sizes) -> SuperMatrix:
    rows = [[0] * n for _ in range(n)]
    rows[a][b] = 1
    return SuperMatrix.from_rows(rows, block_sizes)


def span_coordinates(matrices: Sequence[SuperMatrix]):
    """Return ``coords(m)``: coefficients of ``m`` in the (independent) ``matrices``.

    ``coords`` raises :class:`InternalConsistencyError` when ``m`` is outside the span.
    """
    dim = len(matrices)
    size = matrices[0].size
    cols = [m.flat() for m in matrices]
    flat_rows = [[cols[j][r] for j in range(dim)] for r in range(size * size)]
    piv = linalg.pivot_rows(flat_rows, dim)
    if len(piv) != dim:
        raise DomainError("basis matrices are linearly dependent")
    inv = linalg.inverse([flat_rows[r] for r in piv])

    def coords(m: SuperMatrix) -> dict[int, Fraction]:
        f = m.flat()
        rhs = [f[r] for r in piv]
        c = [sum((inv[i][k] * rhs[k] for k in range(dim) if rhs[k]), Fraction(0)) for i in range(dim)]
        recon = [Fraction(0)] * (size * size)
        for j in range(dim):
            if c[j]:
                for r, x in enumerate(cols[j]):
                    if x:
                        recon[r] += c[j] * x
        if recon != f:
            raise InternalConsistencyError("matrix is not in the span of the basis matrices")
        return {i: x for i, x in enumerate(c) if x}

    return coords


def from_matrix_basis(
    matrices: Sequence[SuperMatrix],
    names: Sequence[str],
    weights: Sequence[Sequence[int]] | None = None,
    generators: Sequence[str] = (),
    chi: Sequence[int] | None = None,
    name: str = "",
) -> GradedLieSuperalgebra:
    """Structure constants of the span of homogeneous supermatrices.

    Raises :class:`InternalConsistencyError` if a supercommutator leaves the span
    and :class:`DomainError` for mixed-parity or dependent inputs.
    """
    dim = len(matrices)
    if weights is None:
        weights = [()] * dim
    parities = []
    for m, nm in zip(matrices, names):
        p = m.parity()
        if p is None:
            raise DomainError(f"basis matrix {nm} is not homogeneous")
        parities.append(p)
    if dim == 0:
        return GradedLieSuperalgebra([], [], [], {}, generators, chi, name)
    coords = span_coordinates(matrices)

    half = {}
    for i, j in combinations_with_replacement(range(dim), 2):
        sc = matrices[i].supercommutator(matrices[j])
        if not sc.is_zero():
            half[(i, j)] = coords(sc)
    return GradedLieSuperalgebra.from_half(names, weights, parities, half, generators, chi, name)


# ---------------------------------------------------------------------------
# gl(m|n)


def _gl_name(a: int, b: int, n: int) -> str:
    return f"E{a}{b}" if n <= 9 else f"E{a}_{b}"


def gl_matrices(m: int, n: int) -> tuple[list[SuperMatrix], list[str]]:
    """Elementary matrices of gl(m|n) in row-major order, with names."""
    size = m + n
    blocks = tuple(b for b in ((m, 0), (n, 1)) if b[0])
    mats, names = [], []
    for a in range(size):
        for b in range(size):
            mats.append(elementary(size, a, b, blocks))
            names.append(_gl_name(a + 1, b + 1, size))
    return mats, names


def build_gl(m: int, n: int) -> GradedLieSuperalgebra:
    """gl(m|n) with basis ``E_ab``; ``E_ab`` is odd iff exactly one of a, b exceeds m."""
    if m < 0 or n < 0:
        raise DomainError("gl(m|n) needs m, n >= 0")
    if m + n < 1:
        raise DomainError("gl(m|n) needs m + n >= 1")
    mats, names = gl_matrices(m, n)
    return from_matrix_basis(mats, names, name=f"gl({m}|{n})")


def build_gl_zgraded(dims: Sequence[int], super_: bool = True) -> GradedLieSuperalgebra:
    """End(V) for ``V = V_0 + V_1 + ...`` with ``dim V_k = dims[k]``.

    ``E_ab`` raises degree by ``q = deg(a) - deg(b)``.  In the super reading the
    parity of ``V_k`` is ``k mod 2`` and every element has parity ``q mod 2``;
    otherwise everything is even.
    """
    dims = [int(d) for d in dims]
    if not dims or any(d < 0 for d in dims) or not any(dims):
        raise DomainError("need at least one positive component dimension")
    degs = [k for k, d in enumerate(dims) for _ in range(d)]
    size = len(degs)
    blocks = tuple((d, (k % 2) if super_ else 0) for k, d in enumerate(dims) if d)
    entries = []
    for a in range(size):
        for b in range(size):
            entries.append((degs[a] - degs[b], a, b))
    entries.sort()
    mats = [elementary(size, a, b, blocks) for _, a, b in entries]
    names = [_gl_name(a + 1, b + 1, size) for _, a, b in entries]
    weights = [(q,) for q, _, _ in entries]
    label = ",".join(str(d) for d in dims)
    return from_matrix_basis(
        mats,
        names,
        weights,
        generators=("q",),
        chi=(1,) if super_ else (0,),
        name=f"End({label})" if super_ else f"End_even({label})",
    )


# ---------------------------------------------------------------------------
# osp


def osp_form(p: int, q: int) -> tuple[list[list[Fraction]], list[int], list[int]]:
    """Gram matrix of Q on ``V0 + L + L'`` with index parities and L-weights.

    ``Q`` is the identity on ``V0`` and ``Q((l1,l1'),(l2,l2')) = l1'(l2) - l2'(l1)``
    on ``L + L'``.
    """
    size = p + 2 * q
    g = linalg.zeros(size, size)
    for i in range(p):
        g[i][i] = Fraction(1)
    for i in range(q):
        f, h = p + i, p + q + i  # f_i in L, h_i in L' with h_i(f_i) = 1
        g[f][h] = Fraction(-1)
        g[h][f] = Fraction(1)
    parities = [0] * p + [1] * (2 * q)
    lweights = [0] * p + [1] * q + [-1] * q
    return g, parities, lweights


def osp_residual(t: SuperMatrix, gram: list[list[Fraction]]) -> list[list[Fraction]]:
    """Entries of ``Q(Tx, y) + (-1)^{|T||x|} Q(x, Ty)`` over basis vectors x, y."""
    pt = t.parity()
    if pt is None:
        raise DomainError("osp residual needs a homogeneous matrix")
    ip = t.index_parities()
    tm = [list(r) for r in t.entries]
    left = linalg.matmul(linalg.transpose(tm), gram)  # (T^T G)_{xy} = Q(T e_x, e_y)
    right = linalg.matmul(gram, tm)  # (G T)_{xy} = Q(e_x, T e_y)
    n = t.size
    return [[left[x][y] + koszul(pt, ip[x]) * right[x][y] for y in range(n)] for x in range(n)]


def osp_matrices(p: int, q2: int) -> tuple[list[SuperMatrix], list[str], list[tuple[int]]]:
    """Basis matrices of osp(V, Q) with names and degrees, as used by :func:`build_osp`.

    L carries weight 1 and L' weight -1; the degree of an endomorphism is the
    weight it adds.  The basis of each (degree, parity) piece is the reduced
    echelon nullspace of the invariance condition.
    """
    if p < 0:
        raise DomainError("osp needs p >= 0")
    if q2 % 2:
        raise DomainError("osp needs an even odd dimension")
    q = q2 // 2
    if q < 1:
        raise DomainError("osp needs q >= 1")
    gram, ip, lw = osp_form(p, q)
    size = p + 2 * q
    blocks = tuple(b for b in ((p, 0), (2 * q, 1)) if b[0])
    mats, names, weights = [], [], []
    labels = {-2: "m2", -1: "m1", 0: "0", 1: "p1", 2: "p2"}
    for deg in range(-2, 3):
        par = deg % 2
        slots = [(a, b) for a in range(size) for b in range(size) if lw[a] - lw[b] == deg and (ip[a] + ip[b]) % 2 == par]
        if not slots:
            continue
        # linear conditions on the slot coefficients
        residuals = [osp_residual(elementary(size, a, b, blocks), gram) for a, b in slots]
        conds = []
        for x in range(size):
            for y in range(size):
                row = [r[x][y] for r in residuals]
                if any(row):
                    conds.append(row)
        for k, vec in enumerate(linalg.nullspace(conds, len(slots)), start=1):
            rows = [[0] * size for _ in range(size)]
            for (a, b), c in zip(slots, vec):
                rows[a][b] = c
            mats.append(SuperMatrix.from_rows(rows, blocks))
            names.append(f"S{labels[deg]}_{k}")
            weights.append((deg,))
    return mats, names, weights


def build_osp(p: int, q2: int) -> GradedLieSuperalgebra:
    """osp(V, Q) with ``dim V0 = p`` and ``dim V1 = q2``, Z-graded in degrees -2..2."""
    mats, names, weights = osp_matrices(p, q2)
    return from_matrix_basis(mats, names, weights, ("q",), (1,), name=f"osp({p}|{q2})")


def build_abelian(dims: Sequence[int]) -> GradedLieSuperalgebra:
    """Abelian superalgebra with ``dims = (even_dim, odd_dim)``."""
    even, odd = (int(d) for d in dims)
    if even < 0 or odd < 0:
        raise DomainError("dimensions must be non-negative")
    names = [f"x{i + 1}" for i in range(even)] + [f"y{i + 1}" for i in range(odd)]
    return GradedLieSuperalgebra(
        names, [()] * len(names), [0] * even + [1] * odd, {}, name=f"abelian({even}|{odd})"
    )


def build_sl11() -> GradedLieSuperalgebra:
    """The supertrace-zero subalgebra of gl(1|1): span{E11+E22, E12, E21}."""
    blocks = ((1, 0), (1, 1))
    mats = [
        SuperMatrix.from_rows([[1, 0], [0, 1]], blocks),
        SuperMatrix.from_rows([[0, 1], [0, 0]], blocks),
        SuperMatrix.from_rows([[0, 0], [1, 0]], blocks),
    ]
    return from_matrix_basis(mats, ["I", "E12", "E21"], name="sl(1|1)")


def parse_builtin(spec: str) -> GradedLieSuperalgebra:
    """Parse ``gl:M,N``, ``glz:d0,d1,...``, ``osp:P,2Q``, ``abelian:E,O``, ``sl11``."""
    kind, _, args = spec.partition(":")
    try:
        nums = [int(x) for x in args.split(",")] if args else []
    except ValueError:
        raise DomainError(f"bad builtin arguments in {spec!r}") from None
    if kind == "gl" and len(nums) == 2:
        return build_gl(*nums)
    if kind == "glz" and nums:
        return build_gl_zgraded(nums)
    if kind == "osp" and len(nums) == 2:
        return build_osp(*nums)
    if kind == "abelian" and len(nums) == 2:
        return build_abelian(nums)
    if kind == "sl11" and not nums:
        return build_sl11()
    raise DomainError(f"unknown builtin {spec!r}")
