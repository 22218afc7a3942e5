"""Text and JSON documents for algebras, morphisms and covering bundles.

Text format, one statement per line, ``#`` starts a comment::

    algebra gl(1|1)
    generator q odd
    basis E11 (0) even
    basis E12 (1) odd
    bracket E11 E12 = 1 E12
    bracket E12 E21 = 1 E11, 1 E22

The parity of a basis element may be omitted when every generator declares
one; the bracket of only one order of each pair is needed, the other is
derived by skew-symmetry.  Coefficients are exact rationals ``p`` or ``p/q``.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .core import (
    DomainError,
    GradedLieSuperalgebra,
    SkewConflictError,
    verify_axioms,
)
from .functors import DiagonalGenerator, FunctorOutput, MultiIndexBasisElement
from .morphism import GradedMorphism, GradingMap


class ParseError(ValueError):
    def __init__(self, line: int, col: int, expected: str, found: str = ""):
        self.line, self.col, self.expected, self.found = line, col, expected, found
        what = f", found {found!r}" if found else ""
        super().__init__(f"line {line}, column {col}: expected {expected}{what}")


class SemanticError(ValueError):
    def __init__(self, message: str, violations: list | dict | None = None):
        self.violations = violations if violations is not None else [message]
        super().__init__(message)


@dataclass
class BasisDecl:
    name: str
    weight: tuple[int, ...]
    parity: int | None = None
    line: int = 0


@dataclass
class BracketDecl:
    left: str
    right: str
    result: list[tuple[Fraction, str]]
    line: int = 0


@dataclass
class AlgebraDocument:
    name: str = ""
    generators: list[tuple[str, int | None]] = field(default_factory=list)
    basis: list[BasisDecl] = field(default_factory=list)
    brackets: list[BracketDecl] = field(default_factory=list)
    comments: list[str] = field(default_factory=list)


# ---------------------------------------------------------------------------
# parsing

_NAME = re.compile(r"[^\s,=#()]+(?:\([^\s,=#]*\))?[^\s,=#]*")
_COEFF = re.compile(r"[+-]?\d+(?:/\d+)?(?![^\s,])")
_INT = re.compile(r"[+-]?\d+")
_PARITIES = {"0": 0, "1": 1, "even": 0, "odd": 1}


class _Line:
    def __init__(self, text: str, lineno: int):
        self.text, self.lineno, self.pos = text, lineno, 0

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos] in " \t":
            self.pos += 1

    def at_end(self) -> bool:
        self.skip()
        return self.pos >= len(self.text)

    def fail(self, expected: str):
        self.skip()
        rest = self.text[self.pos :].split()
        raise ParseError(self.lineno, self.pos + 1, expected, rest[0] if rest else "end of line")

    def match(self, pattern: re.Pattern, expected: str) -> str:
        self.skip()
        m = pattern.match(self.text, self.pos)
        if not m or not m.group(0):
            self.fail(expected)
        self.pos = m.end()
        return m.group(0)

    def literal(self, token: str):
        self.skip()
        if not self.text.startswith(token, self.pos):
            self.fail(repr(token))
        self.pos += len(token)

    def peek(self, token: str) -> bool:
        self.skip()
        return self.text.startswith(token, self.pos)

    def end(self):
        if not self.at_end():
            self.fail("end of line")


def _parity(tok: _Line) -> int:
    word = tok.match(re.compile(r"\S+"), "parity (even, odd, 0 or 1)")
    if word not in _PARITIES:
        tok.pos -= len(word)
        tok.fail("parity (even, odd, 0 or 1)")
    return _PARITIES[word]


def parse(text: str) -> AlgebraDocument:
    """Parse the text format into a document; syntax errors carry line and column."""
    doc = AlgebraDocument()
    seen_header = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].rstrip()
        if "#" in raw and not body.strip():
            doc.comments.append(raw.split("#", 1)[1].strip())
        if not body.strip():
            continue
        tok = _Line(body, lineno)
        kw = tok.match(re.compile(r"[a-z]+"), "a statement (algebra, generator, basis, bracket)")
        if kw == "algebra":
            if seen_header:
                raise ParseError(lineno, 1, "a single algebra statement", "algebra")
            seen_header = True
            tok.skip()
            doc.name = body[tok.pos :].strip()
        elif kw == "generator":
            name = tok.match(_NAME, "generator name")
            parity = None if tok.at_end() else _parity(tok)
            tok.end()
            doc.generators.append((name, parity))
        elif kw == "basis":
            name = tok.match(_NAME, "basis name")
            tok.literal("(")
            weight = []
            if not tok.peek(")"):
                weight.append(int(tok.match(_INT, "integer weight component")))
                while tok.peek(","):
                    tok.literal(",")
                    weight.append(int(tok.match(_INT, "integer weight component")))
            tok.literal(")")
            parity = None if tok.at_end() else _parity(tok)
            tok.end()
            doc.basis.append(BasisDecl(name, tuple(weight), parity, lineno))
        elif kw == "bracket":
            left = tok.match(_NAME, "left basis name")
            right = tok.match(_NAME, "right basis name")
            tok.literal("=")
            result = []
            if tok.peek("0") and tok.text[tok.pos :].strip() == "0":
                tok.pos = len(tok.text)
            else:
                while True:
                    c = Fraction(tok.match(_COEFF, "rational coefficient p or p/q"))
                    if tok.at_end():
                        tok.fail("basis name after the coefficient")
                    nm = tok.match(_NAME, "basis name")
                    result.append((c, nm))
                    if tok.at_end():
                        break
                    tok.literal(",")
            doc.brackets.append(BracketDecl(left, right, result, lineno))
        else:
            tok.pos = 0
            tok.fail("a statement (algebra, generator, basis, bracket)")
    return doc


# ---------------------------------------------------------------------------
# document -> algebra


def to_algebra(doc: AlgebraDocument) -> GradedLieSuperalgebra:
    """Resolve names, derive parities and skew partners.  No axiom check."""
    problems = []
    gen_names = [g for g, _ in doc.generators]
    if len(set(gen_names)) != len(gen_names):
        problems.append("duplicate generator name")
    declared = [p for _, p in doc.generators]
    if any(p is None for p in declared) and any(p is not None for p in declared):
        problems.append("either every generator declares a parity or none does")
    chi = tuple(declared) if declared and all(p is not None for p in declared) else None
    names, weights, parities = [], [], []
    for b in doc.basis:
        if b.name in names:
            problems.append(f"line {b.line}: duplicate basis name {b.name}")
        if len(b.weight) != len(gen_names):
            problems.append(f"line {b.line}: weight of {b.name} has {len(b.weight)} components, expected {len(gen_names)}")
            continue
        derived = None if chi is None else sum(w * c for w, c in zip(b.weight, chi)) % 2
        if b.parity is None and derived is None:
            problems.append(f"line {b.line}: {b.name} needs a parity (generators carry none)")
            continue
        if b.parity is not None and derived is not None and b.parity != derived:
            problems.append(f"line {b.line}: parity of {b.name} conflicts with the generator parities")
        names.append(b.name)
        weights.append(b.weight)
        parities.append(b.parity if b.parity is not None else derived)
    if problems:
        raise SemanticError(problems[0], problems)
    index = {n: i for i, n in enumerate(names)}
    half: dict[tuple[int, int], dict[int, Fraction]] = {}
    for br in doc.brackets:
        for nm in (br.left, br.right, *[n for _, n in br.result]):
            if nm not in index:
                problems.append(f"line {br.line}: undeclared basis element {nm}")
        if problems:
            continue
        key = (index[br.left], index[br.right])
        if key in half:
            problems.append(f"line {br.line}: bracket [{br.left}, {br.right}] given twice")
            continue
        vec: dict[int, Fraction] = {}
        for c, nm in br.result:
            vec[index[nm]] = vec.get(index[nm], Fraction(0)) + c
        half[key] = vec
    if problems:
        raise SemanticError(problems[0], problems)
    try:
        return GradedLieSuperalgebra.from_half(names, weights, parities, half, gen_names, chi, doc.name)
    except SkewConflictError as exc:
        raise SemanticError(str(exc), [f"skew conflict on pair [{exc.pair[0]}, {exc.pair[1]}]"]) from exc
    except DomainError as exc:
        raise SemanticError(str(exc)) from exc


def load(source: "str | AlgebraDocument | Mapping", check: bool = True) -> GradedLieSuperalgebra:
    """Text, JSON text, a JSON-like dict or a parsed document to an algebra.

    With ``check`` the axioms are verified and a violation raises
    :class:`SemanticError` whose ``violations`` is the machine-readable report.
    """
    if isinstance(source, AlgebraDocument):
        doc = source
    elif isinstance(source, Mapping):
        doc = document_from_json(source)
    elif source.lstrip().startswith("{"):
        doc = document_from_json(json.loads(source))
    else:
        doc = parse(source)
    alg = to_algebra(doc)
    if check:
        report = verify_axioms(alg)
        if not report.passed:
            raise SemanticError("algebra violates the axioms", report.to_dict()["violations"])
    return alg


# ---------------------------------------------------------------------------
# serialization


def _fmt(c: Fraction) -> str:
    return str(Fraction(c))


def provenance_lines(out: FunctorOutput) -> list[str]:
    a, g = out.algebra, out.base
    lines = [f"functor {out.functor_tag} k={out.k} base {g.name}"]
    for name, p in zip(a.names, out.provenance):
        if isinstance(p, MultiIndexBasisElement):
            d = "".join(f"d{i}" for i in p.index_set) or "id"
            lines.append(f"{name} <- {d}({g.names[p.base]})")
        elif isinstance(p, DiagonalGenerator):
            sets = " + ".join("d" + "".join(map(str, t)) if t else "id" for t in p.terms) or "0"
            lines.append(f"{name} <- ({sets}) {g.names[p.base]}")
    return lines


def canonical_half(a: GradedLieSuperalgebra) -> list[tuple[int, int, dict[int, Fraction]]]:
    return [(i, j, a.constants[(i, j)]) for i in range(a.dim) for j in range(i, a.dim) if (i, j) in a.constants]


def dumps(a: GradedLieSuperalgebra, comments: list[str] | None = None) -> str:
    """Canonical text form: declared order, one bracket line per pair ``i <= j``."""
    lines = [f"# {c}" for c in comments or []]
    lines.append(f"algebra {a.name}" if a.name else "algebra")
    for k, gname in enumerate(a.generators):
        if a.chi is None:
            lines.append(f"generator {gname}")
        else:
            lines.append(f"generator {gname} {'odd' if a.chi[k] else 'even'}")
    for i, nm in enumerate(a.names):
        w = ",".join(str(c) for c in a.weights[i])
        lines.append(f"basis {nm} ({w}) {'odd' if a.parities[i] else 'even'}")
    for i, j, vec in canonical_half(a):
        terms = ", ".join(f"{_fmt(c)} {a.names[k]}" for k, c in sorted(vec.items()))
        lines.append(f"bracket {a.names[i]} {a.names[j]} = {terms}")
    return "\n".join(lines) + "\n"


def normalize(text: str) -> str:
    """Canonical form of a text document, keeping its leading comments."""
    doc = parse(text)
    return dumps(to_algebra(doc), doc.comments)


def dumps_output(out: FunctorOutput) -> str:
    return dumps(out.algebra, provenance_lines(out))


def to_json(a: GradedLieSuperalgebra, provenance: list[str] | None = None) -> dict:
    doc: dict = {
        "name": a.name,
        "generators": [
            {"name": g} if a.chi is None else {"name": g, "parity": a.chi[k]}
            for k, g in enumerate(a.generators)
        ],
        "basis": [
            {"name": nm, "weight": list(a.weights[i]), "parity": a.parities[i]} for i, nm in enumerate(a.names)
        ],
        "brackets": [
            {
                "left": a.names[i],
                "right": a.names[j],
                "result": [{"basis": a.names[k], "coeff": _fmt(c)} for k, c in sorted(vec.items())],
            }
            for i, j, vec in canonical_half(a)
        ],
    }
    if provenance:
        doc["provenance"] = provenance
    return doc


def _coeff(s, where: str) -> Fraction:
    if isinstance(s, bool) or not isinstance(s, (str, int)):
        raise SemanticError(f"{where}: coefficient must be a 'p/q' string or an integer")
    if isinstance(s, str) and not _COEFF.fullmatch(s.strip()):
        raise SemanticError(f"{where}: {s!r} is not an exact rational")
    return Fraction(s)


def document_from_json(d: Mapping) -> AlgebraDocument:
    try:
        doc = AlgebraDocument(name=d.get("name", ""))
        for g in d.get("generators", []):
            doc.generators.append((g["name"], g.get("parity")))
        for k, b in enumerate(d.get("basis", [])):
            doc.basis.append(BasisDecl(b["name"], tuple(int(x) for x in b["weight"]), b.get("parity"), k + 1))
        for k, br in enumerate(d.get("brackets", [])):
            res = [(_coeff(t["coeff"], f"bracket {k + 1}"), t["basis"]) for t in br["result"]]
            doc.brackets.append(BracketDecl(br["left"], br["right"], res, k + 1))
    except (KeyError, TypeError, AttributeError) as exc:
        raise SemanticError(f"malformed algebra document: {exc}") from exc
    return doc


# ---------------------------------------------------------------------------
# morphisms and covering bundles


def morphism_to_json(f: GradedMorphism) -> dict:
    return {
        "source": to_json(f.source),
        "target": to_json(f.target),
        "grading": f.grading.to_dict(),
        "blocks": [
            {"weight": list(w), "rows": [[_fmt(x) for x in row] for row in block]}
            for w, block in sorted(f.blocks.items())
        ],
    }


def morphism_from_json(d: Mapping) -> GradedMorphism:
    try:
        source = load(d["source"], check=False)
        target = load(d["target"], check=False)
        grading = GradingMap.from_dict(d["grading"])
        blocks = {
            tuple(b["weight"]): [[_coeff(x, "morphism block") for x in row] for row in b["rows"]]
            for b in d["blocks"]
        }
    except (KeyError, TypeError) as exc:
        raise SemanticError(f"malformed morphism document: {exc}") from exc
    try:
        return GradedMorphism(source, target, grading, blocks)
    except DomainError as exc:
        raise SemanticError(str(exc)) from exc


def bundle_to_json(cert) -> dict:
    """A covering certificate plus everything needed to re-verify it."""
    return {"certificate": cert.to_dict(), "projection": morphism_to_json(cert.projection)}


def bundle_from_json(d: Mapping):
    """Rebuild and re-verify a certificate; the stored verdict is not trusted."""
    from .covering import verify_covering

    try:
        info = d["certificate"]
        proj = morphism_from_json(d["projection"])
        cset = [tuple(w) for w in info["support_C"]]
        return verify_covering(proj, cset, info["kind"], info.get("horizon"))
    except (KeyError, TypeError) as exc:
        raise SemanticError(f"malformed covering bundle: {exc}") from exc
