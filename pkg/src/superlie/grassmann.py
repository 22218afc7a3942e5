"""Independent model of the iterated Takiff algebra as ``Lambda(xi_1..xi_k) (x) g``.

The bracket is the usual one on a tensor product of supercommutative and Lie
super algebras:
``[xi_I (x) X, xi_J (x) Y] = (-1)^{|X||J|} xi_I xi_J (x) [X, Y]``,
and ``xi_I xi_J`` is zero when ``I`` and ``J`` meet and otherwise the sign of
the shuffle sorting ``I + J`` times ``xi_{I u J}``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .core import GradedLieSuperalgebra, Vector, koszul
from .functors import FunctorOutput, MultiIndexBasisElement, takiff


def wedge_sign(i: tuple[int, ...], j: tuple[int, ...]) -> int:
    """Sign with ``xi_I xi_J = sign * xi_{sorted(I+J)}``; 0 when ``I`` and ``J`` meet."""
    if set(i) & set(j):
        return 0
    inversions = sum(1 for a in i for b in j if a > b)
    return -1 if inversions % 2 else 1


def grassmann_bracket(
    g: GradedLieSuperalgebra, left: MultiIndexBasisElement, right: MultiIndexBasisElement
) -> dict[MultiIndexBasisElement, object]:
    s = wedge_sign(left.index_set, right.index_set)
    if not s:
        return {}
    s *= koszul(g.parities[left.base], len(right.index_set))
    union = tuple(sorted(left.index_set + right.index_set))
    return {MultiIndexBasisElement(union, e): s * c for e, c in g.bracket_basis(left.base, right.base).items()}


@dataclass
class OracleReport:
    checked: int = 0
    mismatches: list[tuple[str, str, Vector, Vector]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.mismatches


def grassmann_oracle_check(
    g: GradedLieSuperalgebra, k: int, takiff_output: FunctorOutput | None = None
) -> OracleReport:
    """Compare every structure constant of ``takiff(g, k)`` with the tensor model."""
    t = takiff_output if takiff_output is not None else takiff(g, k)
    alg = t.algebra
    report = OracleReport()
    elems = [
        MultiIndexBasisElement(sub, b)
        for p in range(k + 1)
        for sub in combinations(range(1, k + 1), p)
        for b in range(g.dim)
    ]
    if len(elems) != alg.dim or set(elems) != set(t.provenance):
        report.mismatches.append(("basis", "basis", {}, {}))
        return report
    for left in elems:
        u = t.index_of(left)
        for right in elems:
            v = t.index_of(right)
            want = {t.index_of(key): c for key, c in grassmann_bracket(g, left, right).items()}
            got = alg.bracket_basis(u, v)
            report.checked += 1
            if got != want:
                report.mismatches.append((alg.names[u], alg.names[v], got, want))
    return report
