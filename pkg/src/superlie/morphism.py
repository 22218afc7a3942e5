"""Graded linear maps between algebras, stored as one block per source weight."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence, Union

from . import linalg
from .core import DomainError, GradedLieSuperalgebra, Vector, add_into

# A grading image is either a weight tuple or a bare parity (for Z -> Z_2 maps).
Image = Union[tuple[int, ...], int]


@dataclass(frozen=True)
class GradingMap:
    """Homomorphism of weight groups.

    ``identity``: same components; ``parity``: the source chi-parity, landing
    in a parity slice of the target; ``linear``: integer matrix acting on the
    component vector; ``table``: explicit per-weight lookup.
    """

    kind: str
    matrix: tuple[tuple[int, ...], ...] = ()
    table: tuple[tuple[tuple[int, ...], Image], ...] = ()
    chi: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.kind not in ("identity", "parity", "linear", "table"):
            raise DomainError(f"unknown grading map kind {self.kind!r}")

    @classmethod
    def identity(cls) -> "GradingMap":
        return cls("identity")

    @classmethod
    def parity(cls, chi: Sequence[int]) -> "GradingMap":
        return cls("parity", chi=tuple(int(c) % 2 for c in chi))

    @classmethod
    def linear(cls, matrix: Sequence[Sequence[int]]) -> "GradingMap":
        return cls("linear", matrix=tuple(tuple(int(x) for x in row) for row in matrix))

    @classmethod
    def from_table(cls, table: Mapping[tuple[int, ...], Image]) -> "GradingMap":
        return cls("table", table=tuple(sorted(table.items())))

    def image(self, w: Image) -> Image:
        if self.kind == "identity":
            return w
        if self.kind == "parity":
            if isinstance(w, int):
                return w % 2
            return sum(c * p for c, p in zip(w, self.chi)) % 2
        if isinstance(w, int):
            raise DomainError(f"grading map of kind {self.kind} cannot act on a parity")
        if self.kind == "linear":
            return tuple(sum(r * c for r, c in zip(row, w)) for row in self.matrix)
        for key, img in self.table:
            if key == w:
                return img
        raise DomainError(f"weight {w} is not in the grading table")

    def to_dict(self) -> dict:
        out: dict = {"kind": self.kind}
        if self.kind == "parity":
            out["chi"] = list(self.chi)
        elif self.kind == "linear":
            out["matrix"] = [list(r) for r in self.matrix]
        elif self.kind == "table":
            out["table"] = [
                {"source": list(k), "target": v if isinstance(v, int) else list(v)} for k, v in self.table
            ]
        return out

    @classmethod
    def from_dict(cls, d: Mapping) -> "GradingMap":
        kind = d.get("kind")
        if kind == "identity":
            return cls.identity()
        if kind == "parity":
            return cls.parity(d["chi"])
        if kind == "linear":
            return cls.linear(d["matrix"])
        if kind == "table":
            return cls.from_table(
                {
                    tuple(e["source"]): e["target"] if isinstance(e["target"], int) else tuple(e["target"])
                    for e in d["table"]
                }
            )
        raise DomainError(f"unknown grading map kind {kind!r}")


def target_indices(target: GradedLieSuperalgebra, img: Image) -> list[int]:
    """Basis indices of the target component selected by a grading image."""
    if isinstance(img, int):
        return target.parity_component(img)
    return [i for i in range(target.dim) if target.weights[i] == tuple(img)]


def source_weights(a: GradedLieSuperalgebra) -> list[tuple[int, ...]]:
    return sorted(set(a.weights))


def component(a: GradedLieSuperalgebra, w: tuple[int, ...]) -> list[int]:
    return [i for i in range(a.dim) if a.weights[i] == w]


@dataclass
class GradedMorphism:
    source: GradedLieSuperalgebra
    target: GradedLieSuperalgebra
    grading: GradingMap
    blocks: dict[tuple[int, ...], linalg.Matrix]
    _images: list[Vector] | None = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        for w in source_weights(self.source):
            cols = component(self.source, w)
            rows = target_indices(self.target, self.grading.image(w))
            block = self.blocks.get(w)
            if block is None:
                self.blocks[w] = linalg.zeros(len(rows), len(cols))
                continue
            if len(block) != len(rows) or any(len(r) != len(cols) for r in block):
                raise DomainError(
                    f"block for weight {w} has shape {len(block)}x{len(block[0]) if block else 0},"
                    f" expected {len(rows)}x{len(cols)}"
                )
        extra = set(self.blocks) - set(self.source.weights)
        if extra:
            raise DomainError(f"blocks given for weights {sorted(extra)} outside the source support")
        for w, block in self.blocks.items():
            cols = component(self.source, w)
            rows = target_indices(self.target, self.grading.image(w))
            for r, row in zip(rows, block):
                for c, x in zip(cols, row):
                    if x and self.source.parities[c] != self.target.parities[r]:
                        raise DomainError(
                            f"map sends {self.source.names[c]} to {self.target.names[r]} of the other parity"
                        )

    # -- evaluation ---------------------------------------------------------

    def images(self) -> list[Vector]:
        if self._images is None:
            imgs: list[Vector] = [dict() for _ in range(self.source.dim)]
            for w, block in self.blocks.items():
                cols = component(self.source, w)
                rows = target_indices(self.target, self.grading.image(w))
                for r, row in zip(rows, block):
                    for c, x in zip(cols, row):
                        if x:
                            imgs[c][r] = Fraction(x)
            self._images = imgs
        return self._images

    def apply(self, vec: Mapping[int, Fraction]) -> Vector:
        out: Vector = {}
        imgs = self.images()
        for i, c in vec.items():
            add_into(out, imgs[i], c)
        return out

    def to_dense(self) -> linalg.Matrix:
        m = linalg.zeros(self.target.dim, self.source.dim)
        for c, img in enumerate(self.images()):
            for r, x in img.items():
                m[r][c] = x
        return m

    def block(self, w: Sequence[int]) -> linalg.Matrix:
        return self.blocks[tuple(w)]

    def same_blocks(self, other: "GradedMorphism") -> bool:
        return self.to_dense() == other.to_dense() and self.source.dim == other.source.dim

    # -- constructors -------------------------------------------------------

    @classmethod
    def from_images(
        cls,
        source: GradedLieSuperalgebra,
        target: GradedLieSuperalgebra,
        grading: GradingMap,
        images: Mapping[int, Mapping[int, Fraction]],
    ) -> "GradedMorphism":
        dense = linalg.zeros(target.dim, source.dim)
        for c, img in images.items():
            for r, x in img.items():
                dense[r][c] = Fraction(x)
        return cls.from_dense(source, target, grading, dense)

    @classmethod
    def from_dense(
        cls,
        source: GradedLieSuperalgebra,
        target: GradedLieSuperalgebra,
        grading: GradingMap,
        dense: linalg.Matrix,
    ) -> "GradedMorphism":
        """Cut a full matrix into blocks; nonzero entries off the blocks are rejected."""
        blocks = {}
        allowed = [set() for _ in range(source.dim)]
        for w in source_weights(source):
            cols = component(source, w)
            rows = target_indices(target, grading.image(w))
            blocks[w] = [[Fraction(dense[r][c]) for c in cols] for r in rows]
            for c in cols:
                allowed[c] = set(rows)
        for r in range(target.dim):
            for c in range(source.dim):
                if dense[r][c] and r not in allowed[c]:
                    raise DomainError(
                        f"map is not graded: {source.names[c]} has a component along {target.names[r]}"
                    )
        return cls(source, target, grading, blocks)

    @classmethod
    def identity(cls, a: GradedLieSuperalgebra) -> "GradedMorphism":
        return cls.from_dense(a, a, GradingMap.identity(), linalg.identity(a.dim))

    @classmethod
    def zero(cls, source, target, grading: GradingMap) -> "GradedMorphism":
        return cls(source, target, grading, {})


def compose(f: GradedMorphism, g: GradedMorphism) -> GradedMorphism:
    """``f . g``; the grading map is tabulated on the support of ``g.source``."""
    if g.target is not f.source and not g.target.structurally_equal(f.source):
        raise DomainError("cannot compose: target of the inner map is not the source of the outer map")
    dense = linalg.matmul(f.to_dense(), g.to_dense(), inner=f.source.dim, ncols=g.source.dim)
    table = {w: f.grading.image(g.grading.image(w)) for w in source_weights(g.source)}
    return GradedMorphism.from_dense(g.source, f.target, GradingMap.from_table(table), dense)


def change_basis(
    a: GradedLieSuperalgebra, blocks: Mapping[tuple[int, ...], linalg.Matrix], name: str = ""
) -> tuple[GradedLieSuperalgebra, GradedMorphism]:
    """Re-express ``a`` in the basis ``f_j = sum_i P[i][j] e_i`` (P block diagonal by weight).

    Returns the new algebra and the isomorphism ``new -> a`` that sends
    ``f_j`` to its expansion.
    """
    dense = linalg.zeros(a.dim, a.dim)
    for w in source_weights(a):
        idx = component(a, w)
        p = blocks.get(w, linalg.identity(len(idx)))
        if len(p) != len(idx) or not linalg.is_invertible(p, len(idx)):
            raise DomainError(f"basis change on weight {w} is not an invertible {len(idx)}x{len(idx)} matrix")
        for r, row in zip(idx, p):
            for c, x in zip(idx, row):
                dense[r][c] = Fraction(x)
    for c in range(a.dim):
        for r in range(a.dim):
            if dense[r][c] and a.parities[r] != a.parities[c]:
                raise DomainError("basis change mixes parities")
    inv = linalg.inverse(dense)
    cols = [{r: dense[r][c] for r in range(a.dim) if dense[r][c]} for c in range(a.dim)]
    consts = {}
    for i in range(a.dim):
        for j in range(a.dim):
            br = a.bracket_vectors(cols[i], cols[j])
            if br:
                consts[(i, j)] = {
                    k: sum((inv[k][r] * x for r, x in br.items()), Fraction(0)) for k in range(a.dim)
                }
    names = [f"{n}~" for n in a.names]
    new = GradedLieSuperalgebra(
        names, a.weights, a.parities, consts, a.generators, a.chi, name or f"{a.name}~"
    )
    iso = GradedMorphism.from_dense(new, a, GradingMap.identity(), dense)
    return new, iso
