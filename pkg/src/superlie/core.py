"""Graded Lie superalgebras given by exact rational structure constants.

An algebra is an ordered basis of named elements, each carrying a weight in
``Z^r`` (generators named) and a parity bit, together with the full table of
structure constants ``[e_i, e_j] = sum_k c^k_ij e_k``.  All arithmetic is
exact (:class:`fractions.Fraction`).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

Scalar = Fraction

# sparse vector: basis index -> nonzero coefficient
Vector = dict[int, Fraction]
Constants = dict[tuple[int, int], Vector]


class DomainError(ValueError):
    """An operation was applied outside its domain."""


class SkewConflictError(DomainError):
    """Both halves of a skew pair were given and disagree."""

    def __init__(self, pair: tuple[str, str], given, derived):
        self.pair = pair
        self.given = given
        self.derived = derived
        super().__init__(
            f"structure constants for [{pair[0]}, {pair[1]}] conflict with the "
            f"skew partner [{pair[1]}, {pair[0]}]"
        )


class InternalConsistencyError(RuntimeError):
    """A construction that must close did not; indicates a broken invariant."""


def scalar(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floats are not allowed as scalars")
    return Fraction(x)


def koszul(p: int, q: int) -> int:
    """The sign ``(-1)^{pq}``."""
    return -1 if (p & q & 1) else 1


# ---------------------------------------------------------------------------
# weights


@dataclass(frozen=True)
class Weight:
    components: tuple[int, ...]
    generators: tuple[str, ...] = ()

    def __post_init__(self):
        if len(self.components) != len(self.generators):
            raise DomainError(
                f"weight {self.components} does not match generators {self.generators}"
            )

    def _check(self, other: "Weight") -> None:
        if self.generators != other.generators:
            raise DomainError(
                f"weights over different generators: {self.generators} vs {other.generators}"
            )

    def __add__(self, other: "Weight") -> "Weight":
        self._check(other)
        return Weight(tuple(a + b for a, b in zip(self.components, other.components)), self.generators)

    def __neg__(self) -> "Weight":
        return Weight(tuple(-a for a in self.components), self.generators)

    def __sub__(self, other: "Weight") -> "Weight":
        return self + (-other)

    @classmethod
    def zero(cls, generators: Sequence[str] = ()) -> "Weight":
        return cls((0,) * len(generators), tuple(generators))

    def is_zero(self) -> bool:
        return not any(self.components)

    def __str__(self) -> str:
        if not self.generators:
            return "0"
        terms = []
        for c, g in zip(self.components, self.generators):
            if c == 0:
                continue
            if c == 1:
                terms.append(g)
            elif c == -1:
                terms.append(f"-{g}")
            else:
                terms.append(f"{c}{g}")
        return "+".join(terms).replace("+-", "-") if terms else "0"


@dataclass(frozen=True)
class WeightSystem:
    """A set of admissible weights with a parity homomorphism on the generators.

    ``nonneg`` selects the type-Delta reading, where every weight has
    non-negative coordinates.  General Z-supports (negative degrees, as in the
    End(V) and osp gradings) use ``nonneg=False``.
    """

    delta: frozenset[Weight]
    generators: tuple[str, ...]
    chi: tuple[int, ...]
    nonneg: bool = True

    def parity(self, w: Weight) -> int:
        if w.generators != self.generators:
            raise DomainError("weight over foreign generators")
        return sum(c * p for c, p in zip(w.components, self.chi)) % 2

    def violations(self) -> list[str]:
        out = []
        zero = Weight.zero(self.generators)
        if zero not in self.delta:
            out.append("0 is not in delta")
        for i, g in enumerate(self.generators):
            unit = tuple(1 if j == i else 0 for j in range(len(self.generators)))
            if Weight(unit, self.generators) not in self.delta:
                out.append(f"generator {g} is not in delta")
        if self.nonneg:
            for w in self.delta:
                if any(c < 0 for c in w.components):
                    out.append(f"weight {w} has a negative coordinate")
        return out

    def is_valid(self) -> bool:
        return not self.violations()

    def is_multiplicity_free(self) -> bool:
        return all(c in (0, 1) for w in self.delta for c in w.components)

    def even_part(self) -> frozenset[Weight]:
        return frozenset(w for w in self.delta if self.parity(w) == 0)

    def odd_part(self) -> frozenset[Weight]:
        return frozenset(w for w in self.delta if self.parity(w) == 1)


# ---------------------------------------------------------------------------
# algebras


def _clean(vec: Mapping[int, Fraction]) -> Vector:
    return {k: scalar(v) for k, v in vec.items() if v}


def add_into(acc: Vector, vec: Mapping[int, Fraction], coeff: Fraction = Fraction(1)) -> None:
    """``acc += coeff * vec`` in place, dropping zeros."""
    for k, v in vec.items():
        x = acc.get(k, 0) + coeff * v
        if x:
            acc[k] = x
        else:
            acc.pop(k, None)


class GradedLieSuperalgebra:
    """Finite-dimensional weight-graded Lie superalgebra.

    ``constants`` holds the full ordered-pair table exactly as given; use
    :meth:`from_half` to ingest one half of each skew pair and derive the other
    by the sign rule.  Instances are treated as immutable.
    """

    def __init__(
        self,
        names: Sequence[str],
        weights: Sequence[Sequence[int]],
        parities: Sequence[int],
        constants: Mapping[tuple[int, int], Mapping[int, Fraction]] | None = None,
        generators: Sequence[str] = (),
        chi: Sequence[int] | None = None,
        name: str = "",
    ):
        n = len(names)
        if len(weights) != n or len(parities) != n:
            raise DomainError("names, weights and parities must have equal length")
        if len(set(names)) != n:
            raise DomainError("basis names must be unique")
        self.name = name
        self.names: tuple[str, ...] = tuple(names)
        self.generators: tuple[str, ...] = tuple(generators)
        self.weights: tuple[tuple[int, ...], ...] = tuple(tuple(int(c) for c in w) for w in weights)
        for w in self.weights:
            if len(w) != len(self.generators):
                raise DomainError(f"weight {w} has wrong length for generators {self.generators}")
        self.parities: tuple[int, ...] = tuple(int(p) % 2 for p in parities)
        if chi is not None:
            chi = tuple(int(c) % 2 for c in chi)
            if len(chi) != len(self.generators):
                raise DomainError("chi must assign a parity to every generator")
        self.chi: tuple[int, ...] | None = chi
        self.constants: Constants = {}
        for (i, j), vec in (constants or {}).items():
            if not (0 <= i < n and 0 <= j < n):
                raise DomainError(f"structure constant index ({i}, {j}) out of range")
            v = _clean(vec)
            if any(not 0 <= k < n for k in v):
                raise DomainError(f"structure constant result index out of range in ({i}, {j})")
            if v:
                self.constants[(i, j)] = v
        self._index = {nm: i for i, nm in enumerate(self.names)}

    @classmethod
    def from_half(
        cls,
        names: Sequence[str],
        weights: Sequence[Sequence[int]],
        parities: Sequence[int],
        half: Mapping[tuple[int, int], Mapping[int, Fraction]],
        generators: Sequence[str] = (),
        chi: Sequence[int] | None = None,
        name: str = "",
    ) -> "GradedLieSuperalgebra":
        """Build from brackets given for one order of each pair.

        The partner ``[e_j, e_i] = -(-1)^{|e_i||e_j|} [e_i, e_j]`` is derived.
        When both orders are present they must agree with the sign rule.
        """
        ps = [int(p) % 2 for p in parities]
        full: Constants = {}
        given = {k: _clean(v) for k, v in half.items()}
        for (i, j), vec in given.items():
            if i == j:
                full[(i, i)] = vec
                continue
            s = -koszul(ps[i], ps[j])
            derived = {k: s * v for k, v in vec.items()}
            if (j, i) in given and given[(j, i)] != derived:
                raise SkewConflictError((names[i], names[j]), vec, given[(j, i)])
            if vec:
                full[(i, j)] = vec
                full[(j, i)] = derived
        return cls(names, weights, ps, full, generators, chi, name)

    # -- basic data ---------------------------------------------------------

    @property
    def dim(self) -> int:
        return len(self.names)

    def __len__(self) -> int:
        return len(self.names)

    def __repr__(self) -> str:
        label = self.name or "algebra"
        return f"<GradedLieSuperalgebra {label} dim={self.dim}>"

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise DomainError(f"no basis element named {name!r}") from None

    def weight(self, i: int) -> Weight:
        return Weight(self.weights[i], self.generators)

    def parity(self, i: int) -> int:
        return self.parities[i]

    def chi_parity(self, w: Weight | Sequence[int]) -> int:
        if self.chi is None:
            raise DomainError("algebra has no parity homomorphism attached")
        comps = w.components if isinstance(w, Weight) else tuple(w)
        return sum(c * p for c, p in zip(comps, self.chi)) % 2

    def bracket_basis(self, i: int, j: int) -> Vector:
        """``[e_i, e_j]`` as a sparse vector (do not mutate)."""
        return self.constants.get((i, j), {})

    def bracket_vectors(self, x: Mapping[int, Fraction], y: Mapping[int, Fraction]) -> Vector:
        out: Vector = {}
        for i, a in x.items():
            for j, b in y.items():
                c = self.constants.get((i, j))
                if c:
                    add_into(out, c, a * b)
        return out

    # -- elements -----------------------------------------------------------

    def basis_element(self, i: int | str) -> "Element":
        if isinstance(i, str):
            i = self.index(i)
        return Element(self, {i: Fraction(1)})

    def element(self, coeffs: Mapping[int | str, object]) -> "Element":
        vec: Vector = {}
        for k, v in coeffs.items():
            idx = self.index(k) if isinstance(k, str) else k
            add_into(vec, {idx: scalar(v)})
        return Element(self, vec)

    def zero(self) -> "Element":
        return Element(self, {})

    def __getitem__(self, name: str) -> "Element":
        return self.basis_element(name)

    # -- gradings -----------------------------------------------------------

    def support(self) -> set[Weight]:
        return {self.weight(i) for i in range(self.dim)}

    def homogeneous_component(self, w: Weight) -> list[int]:
        if w.generators != self.generators:
            raise DomainError(
                f"weight over generators {w.generators} does not match algebra generators {self.generators}"
            )
        return [i for i in range(self.dim) if self.weights[i] == w.components]

    def parity_component(self, p: int) -> list[int]:
        return [i for i in range(self.dim) if self.parities[i] == p % 2]

    def weight_system(self, nonneg: bool = True) -> WeightSystem:
        if self.chi is None:
            raise DomainError("algebra has no parity homomorphism attached")
        delta = set(self.support())
        delta.add(Weight.zero(self.generators))
        return WeightSystem(frozenset(delta), self.generators, self.chi, nonneg)

    # -- comparison ---------------------------------------------------------

    def structurally_equal(self, other: "GradedLieSuperalgebra") -> bool:
        return (
            self.names == other.names
            and self.weights == other.weights
            and self.parities == other.parities
            and self.generators == other.generators
            and self.chi == other.chi
            and self.constants == other.constants
        )

    def renamed(self, name: str) -> "GradedLieSuperalgebra":
        return GradedLieSuperalgebra(
            self.names, self.weights, self.parities, self.constants, self.generators, self.chi, name
        )


@dataclass(frozen=True)
class Element:
    algebra: GradedLieSuperalgebra
    coeffs: Mapping[int, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _clean(self.coeffs))

    def _same(self, other: "Element") -> None:
        if other.algebra is not self.algebra:
            raise DomainError("elements belong to different algebras")

    def __add__(self, other: "Element") -> "Element":
        self._same(other)
        out = dict(self.coeffs)
        add_into(out, other.coeffs)
        return Element(self.algebra, out)

    def __sub__(self, other: "Element") -> "Element":
        self._same(other)
        out = dict(self.coeffs)
        add_into(out, other.coeffs, Fraction(-1))
        return Element(self.algebra, out)

    def __neg__(self) -> "Element":
        return Element(self.algebra, {k: -v for k, v in self.coeffs.items()})

    def __mul__(self, c) -> "Element":
        c = scalar(c)
        return Element(self.algebra, {k: c * v for k, v in self.coeffs.items()})

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, Element):
            return NotImplemented
        return self.algebra is other.algebra and dict(self.coeffs) == dict(other.coeffs)

    def __hash__(self):
        return hash((id(self.algebra), tuple(sorted(self.coeffs.items()))))

    def is_zero(self) -> bool:
        return not self.coeffs

    def weights(self) -> set[Weight]:
        return {self.algebra.weight(i) for i in self.coeffs}

    def is_homogeneous(self) -> bool:
        return len(self.weights()) <= 1 and len({self.algebra.parity(i) for i in self.coeffs}) <= 1

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k in sorted(self.coeffs):
            c = self.coeffs[k]
            nm = self.algebra.names[k]
            parts.append(nm if c == 1 else f"{c}*{nm}")
        return " + ".join(parts)

    __repr__ = __str__


def bracket(a: GradedLieSuperalgebra, x: Element, y: Element) -> Element:
    """Bilinear extension of the structure constants of ``a``."""
    if x.algebra is not a or y.algebra is not a:
        raise DomainError("bracket arguments do not belong to this algebra")
    return Element(a, a.bracket_vectors(x.coeffs, y.coeffs))


def support(a: GradedLieSuperalgebra) -> set[Weight]:
    return a.support()


def homogeneous_component(a: GradedLieSuperalgebra, w: Weight) -> list[int]:
    return a.homogeneous_component(w)


# ---------------------------------------------------------------------------
# axiom verification


@dataclass
class AxiomReport:
    """Exhaustive axiom check.  Each list holds violations; empty means pass."""

    algebra: GradedLieSuperalgebra
    skew: list[tuple[int, int, Vector]] = field(default_factory=list)
    jacobi: list[tuple[int, int, int, Vector]] = field(default_factory=list)
    grading: list[tuple[int, int, int]] = field(default_factory=list)
    parity: list[int] = field(default_factory=list)
    checked: dict[str, int] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not (self.skew or self.jacobi or self.grading or self.parity)

    def summary(self) -> dict[str, bool]:
        return {
            "skew": not self.skew,
            "jacobi": not self.jacobi,
            "grading": not self.grading,
            "parity": not self.parity,
        }

    def _vec(self, v: Vector) -> dict[str, str]:
        return {self.algebra.names[k]: str(c) for k, c in sorted(v.items())}

    def to_dict(self) -> dict:
        nm = self.algebra.names
        return {
            "algebra": self.algebra.name,
            "dim": self.algebra.dim,
            "passed": self.passed,
            "checks": {
                key: {"passed": ok, "checked": self.checked.get(key, 0)}
                for key, ok in self.summary().items()
            },
            "violations": {
                "skew": [
                    {"pair": [nm[i], nm[j]], "residual": self._vec(r)} for i, j, r in self.skew
                ],
                "jacobi": [
                    {"triple": [nm[i], nm[j], nm[k]], "residual": self._vec(r)}
                    for i, j, k, r in self.jacobi
                ],
                "grading": [
                    {"pair": [nm[i], nm[j]], "result": nm[k]} for i, j, k in self.grading
                ],
                "parity": [nm[i] for i in self.parity],
            },
        }


def verify_axioms(a: GradedLieSuperalgebra, max_violations: int | None = None) -> AxiomReport:
    """Check parity, grading, skew-symmetry and graded Jacobi on all basis tuples.

    Jacobi is checked in the form
    ``[x,[y,z]] - (-1)^{|x||y|} [y,[x,z]] - [[x,y],z] = 0``.
    """
    rep = AxiomReport(a)
    n = a.dim
    par = a.parities
    c = a.constants

    def full() -> bool:
        if max_violations is None:
            return False
        return len(rep.skew) + len(rep.jacobi) + len(rep.grading) + len(rep.parity) >= max_violations

    if a.chi is not None:
        for i in range(n):
            if a.chi_parity(a.weights[i]) != par[i]:
                rep.parity.append(i)
    rep.checked["parity"] = n if a.chi is not None else 0

    for (i, j), vec in c.items():
        wsum = tuple(x + y for x, y in zip(a.weights[i], a.weights[j]))
        psum = (par[i] + par[j]) % 2
        for k in vec:
            if a.weights[k] != wsum or par[k] != psum:
                rep.grading.append((i, j, k))
    rep.checked["grading"] = sum(len(v) for v in c.values())

    for i in range(n):
        for j in range(i, n):
            res = dict(c.get((i, j), {}))
            add_into(res, c.get((j, i), {}), Fraction(koszul(par[i], par[j])))
            if res:
                rep.skew.append((i, j, res))
                if full():
                    return rep
    rep.checked["skew"] = n * (n + 1) // 2

    def left(i: int, vec: Mapping[int, Fraction]) -> Vector:
        out: Vector = {}
        for l, coef in vec.items():
            cc = c.get((i, l))
            if cc:
                add_into(out, cc, coef)
        return out

    def right(vec: Mapping[int, Fraction], k: int) -> Vector:
        out: Vector = {}
        for l, coef in vec.items():
            cc = c.get((l, k))
            if cc:
                add_into(out, cc, coef)
        return out

    count = 0
    for i in range(n):
        for j in range(n):
            cij = c.get((i, j))
            s = koszul(par[i], par[j])
            for k in range(n):
                count += 1
                cjk = c.get((j, k))
                cik = c.get((i, k))
                if not (cjk or cik or cij):
                    continue
                res: Vector = {}
                if cjk:
                    add_into(res, left(i, cjk))
                if cik:
                    add_into(res, left(j, cik), Fraction(-s))
                if cij:
                    add_into(res, right(cij, k), Fraction(-1))
                if res:
                    rep.jacobi.append((i, j, k, res))
                    if full():
                        rep.checked["jacobi"] = count
                        return rep
    rep.checked["jacobi"] = count
    return rep

