"""The eleven acceptance criteria, each exact over Q.

Each test records one PASS/FAIL line, printed in the terminal summary.
Run as a script for the lines alone: ``python3 tests/test_acceptance.py``.
"""

import random
import subprocess
import sys
import time
from fractions import Fraction
from itertools import product
from math import comb
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from conftest import ACCEPTANCE_LINES, FIXTURES  # noqa: E402
from helpers import SUBALGEBRAS, random_psi  # noqa: E402
from superlie import linalg  # noqa: E402
from superlie.builders import build_abelian, build_gl, build_gl_zgraded, build_osp, build_sl11  # noqa: E402
from superlie.core import verify_axioms  # noqa: E402
from superlie.covering import (  # noqa: E402
    build_projection,
    check_homomorphism,
    covering_certificate,
    lift_between_coverings,
    lift_universal,
)
from superlie.functors import f_prime_n, gr_prime, map_through, pi_prime, takiff, truncation_projection  # noqa: E402
from superlie.grassmann import grassmann_oracle_check  # noqa: E402
from superlie.io import dumps, load, normalize, to_json  # noqa: E402
from superlie.loop import loop_model, matrix_realization, triangle_closes, verify_loop_isomorphism  # noqa: E402
from superlie.morphism import GradedMorphism, GradingMap, compose  # noqa: E402

TITLES = {
    1: "axiom suite",
    2: "Grassmann oracle",
    3: "relations in gr'T'",
    4: "negative control without pi'",
    5: "binomial law",
    6: "covering by F'_n",
    7: "universal lift",
    8: "loop isomorphism",
    9: "matrix realization",
    10: "projection tower",
    11: "I/O and CLI",
}


def suite():
    return {
        "gl(1|1)": build_gl(1, 1),
        "gl(2|1)": build_gl(2, 1),
        "gl(2|2)": build_gl(2, 2),
        "gl_Z(1,1)": build_gl_zgraded([1, 1]),
        "osp(1|2)": build_osp(1, 2),
    }


def diag_conjugation(g, a, d):
    images = {
        g.index("E11"): {g.index("E11"): Fraction(1)},
        g.index("E22"): {g.index("E22"): Fraction(1)},
        g.index("E12"): {g.index("E12"): Fraction(a, d)},
        g.index("E21"): {g.index("E21"): Fraction(d, a)},
    }
    return GradedMorphism.from_images(g, g, GradingMap.identity(), images)


# ---------------------------------------------------------------------------
# criteria; each returns (passed, detail)


def criterion_1():
    start = time.perf_counter()
    bad, count, largest = [], 0, 0
    for name, g in suite().items():
        algs = [(name, g)] + [(f"F'_{n}({name})", f_prime_n(g, n).algebra) for n in (2, 3, 4)]
        for label, a in algs:
            count += 1
            largest = max(largest, a.dim)
            if not verify_axioms(a).passed:
                bad.append(label)
    secs = time.perf_counter() - start
    return not bad and secs < 10, f"{count} algebras, largest dim {largest}, {secs:.2f}s" + (
        f", failing {bad}" if bad else ""
    )


def criterion_2():
    total, bad = 0, []
    for g in (build_gl(1, 1), build_gl(2, 1)):
        for k in (1, 2, 3):
            rep = grassmann_oracle_check(g, k)
            total += rep.checked
            if not rep.passed:
                bad.append((g.name, k, len(rep.mismatches)))
    return not bad, f"{total} constants compared" + (f", mismatches {bad}" if bad else "")


def criterion_3():
    g = build_gl(1, 1)
    h = gr_prime(takiff(g, 1))
    a = h.algebra
    odd, even = g.parity_component(1), g.parity_component(0)
    checked, bad = 0, []

    def expect(u, v, want, label):
        nonlocal checked
        checked += 1
        if a.bracket_basis(u, v) != want:
            bad.append(label)

    for y1, y2 in product(odd, odd):
        expect(h.d((), y1), h.d((), y2), {}, "[g1, g1]")
        want = {h.d((1,), e): -c for e, c in g.bracket_basis(y1, y2).items()}
        expect(h.d((), y1), h.d((1,), y2), want, "[Y1, dY2]")
    for y, x in product(odd, even):
        expect(h.d((), y), h.d((1,), x), {}, "[g1, d g0]")
    for x, y in product(range(g.dim), range(g.dim)):
        expect(h.d((1,), x), h.d((1,), y), {}, "[dg, dg]")
    return not bad, f"{checked} pairs" + (f", failing {sorted(set(bad))}" if bad else "")


def criterion_4():
    g = build_gl(1, 1)
    h = gr_prime(takiff(g, 1))
    p = pi_prime(h, 1)
    checked, bad, nonzero = 0, 0, 0
    for y1, y2 in product(g.parity_component(1), repeat=2):
        for out, factor in ((h, 0), (p, 2)):
            left = {out.d((), y1): Fraction(1), out.d((1,), y1): Fraction(1)}
            right = {out.d((), y2): Fraction(1), out.d((1,), y2): Fraction(1)}
            res = out.algebra.bracket_vectors(left, right)
            want = {out.d((1,), e): factor * c for e, c in g.bracket_basis(y1, y2).items()} if factor else {}
            checked += 1
            nonzero += bool(want)
            bad += res != want
    return not bad and nonzero > 0, f"{checked} diagonal odd brackets, {nonzero} nonzero with pi', {bad} failing"


def criterion_5():
    g = build_gl(1, 1)
    checked, bad = 0, 0
    for n in (2, 3, 4, 5):
        f = f_prime_n(g, n)
        for u, v in product(range(f.algebra.dim), repeat=2):
            pu, pv = f.provenance[u], f.provenance[v]
            s = pu.degree + pv.degree
            if s > n:
                continue
            want = {f.diag(s, e): comb(s, pu.degree) * c for e, c in g.bracket_basis(pu.base, pv.base).items()}
            checked += 1
            bad += f.algebra.bracket_basis(u, v) != want
    return not bad, f"{checked} generator pairs, {bad} failing"


def criterion_6():
    bad, witnesses = [], 0
    for name, g in suite().items():
        for n in (2, 3, 4):
            if not covering_certificate(g, n).passed:
                bad.append((name, n))
            unit = check_homomorphism(build_projection(f_prime_n(g, n), normalization="unit"))
            w = unit.witness
            if unit.passed or w.weights != ((1,), (1,)) or w.factor != 2:
                bad.append((name, n, "unit"))
            else:
                witnesses += 1
    abelian = check_homomorphism(build_projection(f_prime_n(build_abelian((1, 1)), 3), normalization="unit"))
    if not abelian.passed:
        bad.append(("abelian", "unit"))
    return not bad, f"15 coverings certified, {witnesses} unit witnesses with factor 2 at (1,1)" + (
        f", failing {bad}" if bad else ""
    )


def criterion_7():
    g = build_gl(1, 1)
    cert = covering_certificate(g, 4)
    bad = []
    ident = lift_universal(cert.projection, cert)
    if ident.to_dense() != linalg.identity(cert.projection.source.dim):
        bad.append("identity")
    lifts = 0
    rng = random.Random(20261017)

    def draw(nonzero=True):
        while True:
            x = Fraction(rng.randint(-9, 9), rng.randint(1, 4))
            if x or not nonzero:
                return x

    for kind in sorted(SUBALGEBRAS):
        for _ in range(12):
            a, d, lam = draw(), draw(), draw(False)
            psi = random_psi(kind, a, d, lam)
            lift = lift_universal(psi, cert)
            lifts += 1
            if compose(cert.projection, lift).to_dense() != psi.to_dense():
                bad.append((kind, a, d, lam))
    cert3 = covering_certificate(g, 3)
    autos = 0
    for a, d in product((1, 2, -3, Fraction(1, 2)), (1, -1, 5)):
        f = diag_conjugation(g, a, d)
        lifted = lift_between_coverings(f, cert3, cert3)
        functorial = map_through(f, "Fn", 3, (cert3.output, cert3.output))
        autos += 1
        if any(lifted.blocks[w] != functorial.blocks[w] for w in lifted.blocks):
            bad.append(("conj", a, d))
    return not bad, f"identity lift, {lifts} random lifts, {autos} automorphisms" + (
        f", failing {bad}" if bad else ""
    )


def criterion_8():
    bad = []
    for g in (build_gl(1, 1), build_gl(2, 1)):
        for n in (2, 3, 4):
            if not verify_loop_isomorphism(f_prime_n(g, n), loop_model(g, n)).passed:
                bad.append((g.name, n))
            if verify_loop_isomorphism(f_prime_n(g, n), loop_model(g, n), rescale=False).passed:
                bad.append((g.name, n, "no rescale passed"))
    return not bad, "6 isomorphisms, 6 failures without rescaling" if not bad else f"failing {bad}"


def criterion_9():
    bad = []
    for m, n in ((1, 1), (2, 1)):
        for d in (2, 3):
            real = matrix_realization(m, n, d)
            if not real.passed or not triangle_closes(real, loop_model(build_gl(m, n), d)):
                bad.append((m, n, d))
    return not bad, "4 realizations injective, closed, triangle commutes" if not bad else f"failing {bad}"


def criterion_10():
    bad = []
    for name, g in suite().items():
        for n in (2, 3, 4):
            t = truncation_projection(f_prime_n(g, n + 1), f_prime_n(g, n))
            if not check_homomorphism(t).passed:
                bad.append((name, n))
    return not bad, "15 truncations are homomorphisms" if not bad else f"failing {bad}"


def _cli(*args, stdin=None):
    proc = subprocess.run(
        [sys.executable, "-m", "superlie.cli", *args], input=stdin, capture_output=True, text=True
    )
    return proc.returncode, proc.stdout


def criterion_11():
    bad = []
    golden = sorted(FIXTURES.glob("*.alg"))
    for path in golden:
        if path.stem.startswith("corrupted"):
            continue
        text = path.read_text()
        a = load(text)
        if dumps(a, [l[2:] for l in text.splitlines() if l.startswith("# ")]) != text or normalize(text) != text:
            bad.append(path.name)
        js = path.with_suffix(".json")
        if js.exists() and not load(js.read_text()).structurally_equal(a):
            bad.append(js.name)
        if not load(to_json(a)).structurally_equal(a):
            bad.append(f"{path.stem} json")
    code, text = _cli("builtin", "gl:1,1")
    code2, text2 = _cli("functor", "--op", "F", "--n", "3", stdin=text)
    code3, _ = _cli("verify", stdin=text2)
    if (code, code2, code3) != (0, 0, 0):
        bad.append(f"pipeline exits {(code, code2, code3)}")
    code4, out = _cli("verify", str(FIXTURES / "corrupted_gl11.alg"))
    if code4 != 1 or "(E12, E12, E21)" not in out:
        bad.append(f"corrupted fixture exit {code4}")
    return not bad, f"{len(golden) - 1} golden files, pipeline 0, corrupted 1" if not bad else f"failing {bad}"


CRITERIA = {k: globals()[f"criterion_{k}"] for k in TITLES}


def line(k, ok, detail):
    return f"[{'PASS' if ok else 'FAIL'}] {k:2d}. {TITLES[k]}: {detail}"


@pytest.mark.parametrize("k", sorted(CRITERIA))
def test_criterion(k):
    ok, detail = CRITERIA[k]()
    text = line(k, ok, detail)
    ACCEPTANCE_LINES[k] = text
    print(text)
    assert ok, text


if __name__ == "__main__":
    results = []
    for k in sorted(CRITERIA):
        ok, detail = CRITERIA[k]()
        print(line(k, ok, detail), flush=True)
        results.append(ok)
    sys.exit(0 if all(results) else 1)
