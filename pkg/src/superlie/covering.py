"""Homomorphism checks, the projection onto the base algebra, coverings and lifts."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Iterable

from . import linalg
from .core import (
    DomainError,
    GradedLieSuperalgebra,
    InternalConsistencyError,
    Vector,
    verify_axioms,
)
from .functors import DiagonalGenerator, FunctorOutput, f_prime_n
from .morphism import (
    GradedMorphism,
    GradingMap,
    Image,
    component,
    compose,
    source_weights,
    target_indices,
)

NORMALIZATIONS = ("unit", "inverse_factorial")


@dataclass(frozen=True)
class HomFailure:
    left: int
    right: int
    names: tuple[str, str]
    weights: tuple[tuple[int, ...], tuple[int, ...]]
    image_of_bracket: Vector
    bracket_of_images: Vector

    @property
    def factor(self) -> Fraction | None:
        """``c`` with ``f([x,y]) = c [f x, f y]`` when the two sides are proportional."""
        a, b = self.image_of_bracket, self.bracket_of_images
        if not b or set(a) != set(b):
            return None
        ratios = {a[k] / b[k] for k in b}
        return ratios.pop() if len(ratios) == 1 else None

    def describe(self, target: GradedLieSuperalgebra | None = None) -> str:
        def show(v):
            if target is None:
                return str({k: str(x) for k, x in v.items()})
            return " + ".join(f"{x}*{target.names[k]}" for k, x in sorted(v.items())) or "0"

        return (
            f"f([{self.names[0]}, {self.names[1]}]) = {show(self.image_of_bracket)}"
            f" but [f({self.names[0]}), f({self.names[1]})] = {show(self.bracket_of_images)}"
        )


@dataclass
class HomVerdict:
    checked: int = 0
    failures: list[HomFailure] = field(default_factory=list)
    target: GradedLieSuperalgebra | None = None

    @property
    def passed(self) -> bool:
        return not self.failures

    @property
    def witness(self) -> HomFailure | None:
        return self.failures[0] if self.failures else None

    def describe_first(self) -> str:
        return self.failures[0].describe(self.target) if self.failures else "ok"


def _check(f: GradedMorphism, keep) -> HomVerdict:
    src, tgt = f.source, f.target
    imgs = f.images()
    verdict = HomVerdict(target=tgt)
    for u in range(src.dim):
        for v in range(src.dim):
            if not keep(src.weights[u], src.weights[v]):
                continue
            verdict.checked += 1
            lhs = f.apply(src.bracket_basis(u, v))
            rhs = tgt.bracket_vectors(imgs[u], imgs[v])
            if lhs != rhs:
                verdict.failures.append(
                    HomFailure(
                        u, v, (src.names[u], src.names[v]), (src.weights[u], src.weights[v]), lhs, rhs
                    )
                )
    verdict.failures.sort(key=lambda x: (sum(x.weights[0]) + sum(x.weights[1]), x.weights, x.left, x.right))
    return verdict


def check_homomorphism(f: GradedMorphism) -> HomVerdict:
    """``f([e_i, e_j]) == [f(e_i), f(e_j)]`` on every ordered basis pair."""
    return _check(f, lambda a, b: True)


def _add(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(x + y for x, y in zip(a, b))


def check_partial_homomorphism(f: GradedMorphism, support_c: Iterable[Iterable[int]]) -> HomVerdict:
    """Homomorphism law only on pairs with both weights and their sum in ``C``."""
    cset = {tuple(w) for w in support_c}
    return _check(f, lambda a, b: a in cset and b in cset and _add(a, b) in cset)


# ---------------------------------------------------------------------------
# the projection


def build_projection(
    p: FunctorOutput, g: GradedLieSuperalgebra | None = None, normalization: str = "inverse_factorial"
) -> GradedMorphism:
    """``X'_i -> X / i!`` (or ``X`` for the unit normalization), graded by Z -> Z_2."""
    if normalization not in NORMALIZATIONS:
        raise DomainError(f"normalization must be one of {NORMALIZATIONS}")
    if not isinstance(p, FunctorOutput) or not all(isinstance(d, DiagonalGenerator) for d in p.provenance):
        raise DomainError("projection needs an output of f_prime_n with diagonal-generator provenance")
    if g is None:
        g = p.base
    elif g is not p.base and not g.structurally_equal(p.base):
        raise DomainError("target algebra is not the base of the functor output")
    images = {}
    for u, d in enumerate(p.provenance):
        c = Fraction(1, factorial(d.degree)) if normalization == "inverse_factorial" else Fraction(1)
        images[u] = {d.base: c}
    return GradedMorphism.from_images(p.algebra, g, GradingMap.parity(p.algebra.chi), images)


# ---------------------------------------------------------------------------
# certificates


@dataclass
class CoveringCertificate:
    projection: GradedMorphism
    phi: GradingMap
    support_c: frozenset[tuple[int, ...]]
    kind: str  # "full" or "semicovering"
    checks: dict[str, tuple[bool, str]]
    horizon: int | None = None
    output: FunctorOutput | None = None

    @property
    def passed(self) -> bool:
        return all(ok for ok, _ in self.checks.values())

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "horizon": self.horizon,
            "support_C": [list(w) for w in sorted(self.support_c)],
            "phi": self.phi.to_dict(),
            "verdict": "pass" if self.passed else "fail",
            "checks": {k: {"passed": ok, "detail": d} for k, (ok, d) in self.checks.items()},
        }


def target_support(f: GradedMorphism) -> set[Image]:
    tgt = f.target
    if f.grading.kind == "parity":
        return {tgt.parities[i] for i in range(tgt.dim)}
    return set(tgt.weights)


def verify_covering(
    projection: GradedMorphism,
    support_c: Iterable[Iterable[int]] | None = None,
    kind: str = "semicovering",
    horizon: int | None = None,
    output: FunctorOutput | None = None,
) -> CoveringCertificate:
    """Itemized covering checks.

    ``kind="full"`` checks the homomorphism law on every pair, or with a
    ``horizon`` on every pair whose total degree is at most the horizon (the
    part of an infinite covering that a finite truncation determines).
    ``kind="semicovering"`` checks the partial law on ``C``.
    """
    if kind not in ("full", "semicovering"):
        raise DomainError("kind must be 'full' or 'semicovering'")
    src = projection.source
    supp = set(src.weights)
    cset = frozenset(tuple(w) for w in support_c) if support_c is not None else frozenset(supp)
    checks: dict[str, tuple[bool, str]] = {}

    report = verify_axioms(src)
    checks["axioms"] = (report.passed, "source satisfies the axioms" if report.passed else str(report.summary()))

    if kind == "semicovering":
        hv = check_partial_homomorphism(projection, cset)
        label = "partial homomorphism on C"
    elif horizon is None:
        hv = check_homomorphism(projection)
        label = "homomorphism"
    else:
        hv = _check(projection, lambda a, b: sum(a) + sum(b) <= horizon)
        label = f"homomorphism on pairs of total degree <= {horizon}"
    checks["homomorphism"] = (hv.passed, f"{label}: {hv.checked} pairs" if hv.passed else hv.describe_first())

    bad = []
    for a in sorted(cset):
        cols = component(src, a)
        rows = target_indices(projection.target, projection.grading.image(a))
        block = projection.blocks.get(a, linalg.zeros(len(rows), len(cols)))
        if len(rows) != len(cols) or not linalg.is_invertible(block, len(cols)):
            bad.append(str(list(a)))
    checks["bijective_blocks"] = (not bad, "all degree blocks invertible" if not bad else "not invertible at " + ", ".join(bad))

    images = {projection.grading.image(a) for a in cset}
    missing = target_support(projection) - images
    checks["covers_target"] = (not missing, "phi(C) covers the target support" if not missing else f"missing {sorted(missing)}")

    same = supp == set(cset)
    checks["support_is_C"] = (
        same,
        "supp = C" if same else f"supp {sorted(supp)} differs from C {sorted(cset)}",
    )
    return CoveringCertificate(projection, projection.grading, cset, kind, checks, horizon, output)


def covering_certificate(
    g: GradedLieSuperalgebra,
    n: int,
    normalization: str = "inverse_factorial",
    infinite_truncate: int | None = None,
) -> CoveringCertificate:
    """Build ``F'_n(g)`` (or ``F'_T`` as a window onto the infinite covering) and certify it."""
    if infinite_truncate is not None:
        out = f_prime_n(g, infinite_truncate)
        proj = build_projection(out, g, normalization)
        return verify_covering(proj, kind="full", horizon=infinite_truncate, output=out)
    out = f_prime_n(g, n)
    proj = build_projection(out, g, normalization)
    return verify_covering(proj, [(i,) for i in range(n + 1)], "semicovering", output=out)


# ---------------------------------------------------------------------------
# lifts


def _law_holds(psi: GradedMorphism, cert: CoveringCertificate) -> HomVerdict:
    """The law psi must satisfy: everywhere for a full covering, else on supp(a)."""
    if cert.kind == "full" and cert.horizon is None:
        return check_homomorphism(psi)
    return check_partial_homomorphism(psi, set(psi.source.weights))


def lift_universal(psi: GradedMorphism, cert: CoveringCertificate) -> GradedMorphism:
    """The unique graded ``Psi: a -> p`` with ``Pi' . Psi = psi``, degree by degree.

    For a semicovering (or a finite window of a full covering) ``psi`` need
    only be a partial homomorphism on ``supp(a)``, and so is the lift.
    """
    if not cert.passed:
        raise DomainError("covering certificate did not pass")
    hv = _law_holds(psi, cert)
    if not hv.passed:
        raise DomainError(f"psi is not a homomorphism where the covering requires it: {hv.describe_first()}")
    proj = cert.projection
    a, p, g = psi.source, proj.source, proj.target
    if psi.target is not g and not psi.target.structurally_equal(g):
        raise DomainError("psi does not land in the algebra covered by the certificate")
    dense = psi.to_dense()
    blocks = {}
    for s in source_weights(a):
        if s not in cert.support_c:
            raise DomainError(f"source weight {list(s)} lies outside the covering support")
        cols = component(a, s)
        rows = target_indices(g, cert.phi.image(s))
        rowset = set(rows)
        for c in cols:
            for r in range(g.dim):
                if dense[r][c] and r not in rowset:
                    raise DomainError(f"psi is not graded: {a.names[c]} leaves the component phi({list(s)})")
        psi_s = [[dense[r][c] for c in cols] for r in rows]
        inv = linalg.inverse(proj.blocks[s])
        blocks[s] = linalg.matmul(inv, psi_s, inner=len(rows), ncols=len(cols))
    lift = GradedMorphism(a, p, GradingMap.identity(), blocks)
    back = linalg.matmul(proj.to_dense(), lift.to_dense(), inner=p.dim, ncols=a.dim)
    if back != dense:
        raise InternalConsistencyError("lift does not factor psi through the projection")
    return lift


def lift_between_coverings(
    f: GradedMorphism, cert: CoveringCertificate, cert_t: CoveringCertificate
) -> GradedMorphism:
    """``F: p -> p~`` with ``Pi~' . F = f . Pi'``, via the universal lift of ``f . Pi'``."""
    hv = check_homomorphism(f)
    if not hv.passed:
        raise DomainError(f"f is not a homomorphism: {hv.describe_first()}")
    return lift_universal(compose(f, cert.projection), cert_t)


def projection_with_zeroed_block(proj: GradedMorphism, weight: tuple[int, ...]) -> GradedMorphism:
    """Copy of ``proj`` with one degree block set to zero (a negative control)."""
    blocks = {w: [row[:] for row in b] for w, b in proj.blocks.items()}
    blocks[weight] = [[Fraction(0)] * len(r) for r in blocks[weight]]
    return GradedMorphism(proj.source, proj.target, proj.grading, blocks)

