"""Acceptance criteria 1-11.

Each ``check_N`` returns ``(ok, detail)``. The pytest wrappers record one line
per criterion (printed in the terminal summary) and assert ``ok``. Run this file
directly to get just the eleven lines.
"""

import math
import random
import subprocess
import sys
import time
from fractions import Fraction
from pathlib import Path

import pytest

from gdeg.burnside import BurnsideElement, mark_vector
from gdeg.ccs import ccs
from gdeg.cyclo import Cyclo
from gdeg.degree import basic_degree, fold, maximal_orbit_types
from gdeg.errors import DegenerateLinearization
from gdeg.groups import build_cyclic, build_dihedral, build_product
from gdeg.pipeline import AnalysisConfig, analyze, full_group, klein
from gdeg.reps import fixed_dim, irreps_of, isotypic_decomposition, signed_irreps
from gdeg.spectral import (
    Delay,
    DelaySet,
    circulant_mu,
    mu_table,
    validate_delays,
    xi,
    xi_complex,
)

from conftest import ACCEPTANCE_LINES, dihedral_env

ROOT = Path(__file__).resolve().parents[1]
D3_CONFIG = ROOT / "configs" / "dihedral_d3.yaml"

# Printed basic degrees for Gamma = D3, in this package's class names ({e} = Z1).
PRINTED_D3_DEGREES = {
    "U0-": [(1, "G"), (-1, "D1z x D3")],
    "U0+": [(1, "G"), (-1, "D1 x D3")],
    "U1-": [(1, "G"), (-1, "D1z x D1"), (-1, "(D1xZ2)^{D1z} x_{Z2}^{Z1} D1"), (1, "D1z x Z1")],
    "U1+": [(1, "G"), (-1, "D1 x D1"), (-1, "(D1xZ2)^{D1} x_{Z2}^{Z1} D1"), (1, "D1z x Z1")],
}
PRINTED_MAXIMAL_U_MINUS = {"D1z x D3", "(D1xZ2)^{D1z} x_{Z2}^{Z1} D1"}
PRINTED_MU = {0: [-5, -10, -13, -13, -10], 1: [1, 2, 2, 2, 2]}
D3_DELAYS = ["2*pi*1/5", "2*pi*2/5", "2*pi*3/5", "2*pi*4/5"]
D3_CIRCULANT = [(-1, -2), (-2, -4), (-3, -5), (-3, -5), (-2, -4)]


def _record(i: int, ok: bool, detail: str) -> None:
    ACCEPTANCE_LINES[i] = f"criterion {i:2d}: {'PASS' if ok else 'FAIL'}  {detail}"


def _element(table, terms) -> BurnsideElement:
    coeffs = {}
    for c, name in terms:
        i = table.top if name == "G" else table.find(name)
        coeffs[i] = coeffs.get(i, 0) + c
    return BurnsideElement(table, coeffs)


def _supported_groups():
    """Groups checked for the ring-level criteria: every G = (D1 x Z2) x Gamma with
    |G| <= 200 that the tool builds, plus the small factors themselves."""
    out = [build_cyclic(2), build_dihedral(1), build_dihedral(3), klein(),
           build_product(klein(), build_cyclic(1)), build_product(klein(), build_cyclic(2))]
    for n in (1, 3, 5, 7, 9, 11, 13, 15, 25):
        out.append(build_product(klein(), build_dihedral(n)))
    return out


# 1 -------------------------------------------------------------------------------


def check_1():
    t0 = time.perf_counter()
    decomp = isotypic_decomposition(build_dihedral(3))
    gamma = decomp.gamma
    G = full_group(gamma)
    table = ccs(G)
    computed = {}
    for plus, minus in signed_irreps(decomp, G):
        for r in (plus, minus):
            computed[r.name] = basic_degree(r, table).value
    elapsed = time.perf_counter() - t0
    bad = []
    for name, terms in PRINTED_D3_DEGREES.items():
        want = _element(table, terms)
        if computed[name] != want or computed[name].render() != want.render():
            bad.append(f"{name}: computed {computed[name].render()}, printed {want.render()}")
    ok = not bad and elapsed < 5
    detail = f"{4 - len(bad)}/4 match, {elapsed:.2f}s" + ("; " + "; ".join(bad) if bad else "")
    return ok, detail


# 2 -------------------------------------------------------------------------------


def check_2():
    worst, bad, done = 0.0, [], []
    for G in _supported_groups():
        if G.order > 200:
            continue
        t0 = time.perf_counter()
        table = ccs(G)
        C = len(table)
        gens = [BurnsideElement.generator(table, i) for i in range(C)]
        marks = [mark_vector(g) for g in gens]
        for i in range(C):
            for j in range(i, C):
                got = mark_vector(gens[i] * gens[j])
                want = tuple(a * b for a, b in zip(marks[i], marks[j]))
                if got != want:
                    bad.append((G.descriptor, i, j))
        dt = time.perf_counter() - t0
        worst = max(worst, dt)
        done.append(G.order)
    ok = not bad and worst < 60
    return ok, f"{len(done)} groups (|G| up to {max(done)}), {len(bad)} mismatches, slowest {worst:.1f}s"


# 3, 4 ----------------------------------------------------------------------------


def _all_irreps():
    for G in _supported_groups():
        table = ccs(G)
        for r in irreps_of(G):
            yield G, table, r


def check_3():
    total, bad = 0, []
    for G, table, r in _all_irreps():
        d = basic_degree(r, table).value
        total += 1
        if d * d != BurnsideElement.unit(table):
            bad.append(f"{G.descriptor}:{r.name}")
    return not bad, f"{total} irreducibles, {len(bad)} failures" + (f": {bad[:5]}" if bad else "")


def check_4():
    total, bad = 0, []
    for G, table, r in _all_irreps():
        d = basic_degree(r, table).value
        want = [(-1) ** fixed_dim(r, c.representative.mask) for c in table]
        total += len(table)
        if fold(d) != want:
            bad.append(f"{G.descriptor}:{r.name}")
    return not bad, f"{total} (irreducible, class) pairs, {len(bad)} failures"


# 5 -------------------------------------------------------------------------------


def check_5_mu_table():
    mu = circulant_mu(D3_CIRCULANT, 3)
    got = {l: [mu.mus[j][l] for j in range(5)] for l in (0, 1)}
    ok = all(got[l][j] == Cyclo.rational(PRINTED_MU[l][j]) for l in (0, 1) for j in range(5))
    return ok, f"mu table {'matches' if ok else 'differs'}: {[[str(v) for v in got[l]] for l in (0, 1)]}"


def check_5_xi00():
    mu = circulant_mu(D3_CIRCULANT, 3)
    delays = validate_delays(D3_DELAYS)
    v = xi(0, 0, mu, delays)
    return isinstance(v, Cyclo) and v == -97, f"xi[0,0] = {v} (exact path), printed -97"


def check_5():
    ok_mu, d_mu = check_5_mu_table()
    ok_xi, d_xi = check_5_xi00()
    return ok_mu and ok_xi, f"{d_xi}; {d_mu}"


# 6 -------------------------------------------------------------------------------


def _d3_report(audit=True):
    return analyze(AnalysisConfig.load(D3_CONFIG), audit=audit)


def check_6():
    G, table, pairs, plus, minus = dihedral_env(3)
    doc = _d3_report().document
    ps = doc["printed_spectrum"]
    # components: l = 0 -> U0, l = 1 -> U1
    want = BurnsideElement.unit(table) - plus[0].value * plus[1].value * minus[1].value
    omega_ok = ps["omega"]["text"] == want.render()
    H = table.find("(D1xZ2)^{D1z} x_{Z2}^{Z1} D1")
    coeff = want.coeff(H)
    verdict = next(v for v in ps["verdicts"] if v["class_index"] == H)
    divergent = {(d["l"], d["k"]) for d in ps["divergent"]}
    notes = doc["audit_notes"]
    has_05 = (0, 5) in divergent and any("(l=0, k=5)" in n and "negative" in n for n in notes)
    ok = omega_ok and coeff == 1 and verdict["coeff_omega"] == 1 and has_05
    return ok, (f"printed-spectrum omega {'ok' if omega_ok else 'differs'}, coeff^H = {coeff}; "
                f"divergent signs at {sorted(divergent)}")


# 7 -------------------------------------------------------------------------------


def check_7():
    G, table, pairs, plus, minus = dihedral_env(3)
    got = {table[i].name for i in maximal_orbit_types([m for _, m in pairs], table)}
    return got == PRINTED_MAXIMAL_U_MINUS, f"computed {sorted(got)}"


# 8 -------------------------------------------------------------------------------


def random_instance(rng: random.Random, n: int, exact: bool) -> dict:
    """A mu_table config for Gamma = D_n with symmetric delays and paired rows."""
    r = n // 2
    m = rng.randint(0, 4)
    half = m // 2
    if exact:
        q = rng.choice([5, 6, 7, 8, 9, 10, 12])
        top = (q + 1) // 2 if q % 2 else q // 2
        turns = sorted(Fraction(p, q) for p in rng.sample(range(1, top), half)) if half else []
        delays = [f"2*pi*{t.numerator}/{t.denominator}" for t in turns]
        if m % 2:
            delays.append("pi")
        delays += [f"2*pi*{(1 - t).numerator}/{(1 - t).denominator}" for t in reversed(turns)]
    else:
        ts = sorted(rng.uniform(0.1, 3.0) for _ in range(half))
        delays = [repr(t) for t in ts] + (["pi"] if m % 2 else [])
        delays += [repr(2 * math.pi - t) for t in reversed(ts)]
    cols = [[rng.randint(-25, 8) for _ in range(r + 1)] for _ in range(half + 1 + m % 2)]
    rows = [cols[0]] + cols[1:half + 1] + ([cols[half + 1]] if m % 2 else []) + list(reversed(cols[1:half + 1]))
    return {"group": {"type": "dihedral", "n": n}, "delays": delays, "matrices": {"mu_table": {"rows": rows}}}


def check_8(per_group=200, seed=1):
    rng = random.Random(seed)
    t0 = time.perf_counter()
    parts, failures = [], []
    for n in (3, 5, 7):
        valid = odd = skipped = 0
        while valid < per_group:
            cfg = AnalysisConfig.from_dict(random_instance(rng, n, rng.random() < 0.5))
            try:
                doc = analyze(cfg).document
            except DegenerateLinearization:
                skipped += 1
                continue
            valid += 1
            for v in doc["verdicts"]:
                if v["parity"] == "odd":
                    odd += 1
                    if not (v["coeff_omega"] == v["x_o"] and v["x_o"]):
                        failures.append((n, v["orbit_type"], v["coeff_omega"], v["x_o"]))
        parts.append(f"n={n}: {valid} instances, {odd} odd, {skipped} degenerate skipped")
    dt = time.perf_counter() - t0
    ok = not failures and dt < 600
    return ok, f"{len(failures)} failures in {dt:.1f}s ({'; '.join(parts)})"


# 9 -------------------------------------------------------------------------------


def check_9():
    case_a = case_b = 0
    bad = []
    for n in (3, 5, 7, 9, 15):
        G, table, pairs, plus, minus = dihedral_env(n)
        for H in maximal_orbit_types([m for _, m in pairs], table):
            xo = {2: 1, 1: 2}.get(table.weyl(H))
            for a in minus:
                for b in minus:
                    ca, cb = a.value.coeff(H), b.value.coeff(H)
                    if not ca:
                        continue
                    prod = (a.value * b.value).coeff(H)
                    if cb:
                        case_a += 1
                        if prod != 0:
                            bad.append((n, table[H].name, a.irrep.name, b.irrep.name, prod))
                    else:
                        case_b += 1
                        if xo is None or prod != -xo:
                            bad.append((n, table[H].name, a.irrep.name, b.irrep.name, prod))
    return not bad, f"case (a) {case_a} pairs, case (b) {case_b} pairs, {len(bad)} failures"


# 10 ------------------------------------------------------------------------------


def check_10(points=10_000, seed=7):
    rng = random.Random(seed)
    worst = 0.0
    for _ in range(points):
        m = rng.randint(0, 6)
        half = m // 2
        ts = sorted(rng.uniform(0.05, math.pi - 0.05) for _ in range(half))
        taus = ts + ([math.pi] if m % 2 else []) + [2 * math.pi - t for t in reversed(ts)]
        delays = DelaySet(tuple(Delay(t) for t in taus))
        pairs = [rng.uniform(-10, 10) for _ in range(half + m % 2)]
        rows = [[rng.uniform(-10, 10)]] + [[v] for v in pairs[:half]]
        if m % 2:
            rows.append([pairs[half]])
        rows += [[v] for v in reversed(pairs[:half])]
        mu = mu_table(rows)
        k = rng.randint(0, 30)
        a = xi(0, k, mu, delays)
        b = xi_complex(0, k, mu, delays, exact=False)
        worst = max(worst, abs(a - b.real), abs(b.imag))
    exact_bad = 0
    for q in (3, 4, 5, 7, 8, 12):
        for p in range(1, (q + 1) // 2):
            delays = validate_delays([f"2*pi*{p}/{q}", f"2*pi*{q - p}/{q}"])
            mu = mu_table([[rng.randint(-9, 9)], [v := rng.randint(-9, 9)], [v]])
            for k in range(12):
                if xi(0, k, mu, delays) != xi_complex(0, k, mu, delays):
                    exact_bad += 1
    ok = worst < 1e-12 and exact_bad == 0
    return ok, f"max float discrepancy {worst:.2e} over {points} points, exact-path mismatches {exact_bad}"


# 11 ------------------------------------------------------------------------------


def _cli(*args):
    return subprocess.run([sys.executable, "-m", "gdeg", *args], capture_output=True, check=False)


def check_11():
    outs = []
    for config in ("dihedral_d5.yaml", "dihedral_d3.yaml"):
        path = str(ROOT / "configs" / config)
        runs = [_cli("analyze", "--config", path, "--format", "machine", "--audit", "--jobs", str(j))
                for j in (1, 1, 4)]
        outs.append(all(r.stdout == runs[0].stdout and r.stdout for r in runs))
    same_api = _d3_report().to_json() == _d3_report().to_json()
    ok = all(outs) and same_api
    return ok, f"machine reports identical across runs and --jobs 1/4: {outs}, in-process: {same_api}"


# pytest wrappers -------------------------------------------------------------------

_PRINTED_U1_PLUS_NOTE = (
    "the printed deg[U1+] ends in +(D1z x Z1); (kappa,-1,e) acts as -Id on V+ (x) U1, so "
    "D1z x Z1 fixes nothing and the computed last term is +(D1 x Z1)"
)
_XI00_NOTE = (
    "the printed value -97 counts every delay term twice; the cosine form derived from "
    "the delay equation gives -51, and the complex-exponential oracle agrees"
)


@pytest.mark.xfail(strict=True, reason=_PRINTED_U1_PLUS_NOTE)
def test_criterion_01_basic_degrees():
    ok, detail = check_1()
    _record(1, ok, detail)
    assert ok, detail


def test_criterion_01_computed_u1_plus():
    G, table, pairs, plus, minus = dihedral_env(3)
    want = _element(table, [(1, "G"), (-1, "D1 x D1"), (-1, "(D1xZ2)^{D1} x_{Z2}^{Z1} D1"), (1, "D1 x Z1")])
    assert plus[1].value == want
    for name in ("U0-", "U0+", "U1-"):
        l, sign = int(name[1]), name[2]
        value = (plus if sign == "+" else minus)[l].value
        assert value == _element(table, PRINTED_D3_DEGREES[name])


def test_criterion_02_burnside_oracle():
    ok, detail = check_2()
    _record(2, ok, detail)
    assert ok, detail


def test_criterion_03_involution():
    ok, detail = check_3()
    _record(3, ok, detail)
    assert ok, detail


def test_criterion_04_fold_round_trip():
    ok, detail = check_4()
    _record(4, ok, detail)
    assert ok, detail


@pytest.mark.xfail(strict=True, reason=_XI00_NOTE)
def test_criterion_05_spectrum_anchor():
    ok, detail = check_5()
    _record(5, ok, detail)
    assert ok, detail


def test_criterion_05_mu_table_part():
    ok, detail = check_5_mu_table()
    assert ok, detail


def test_criterion_05_computed_xi00():
    mu = circulant_mu(D3_CIRCULANT, 3)
    delays = validate_delays(D3_DELAYS)
    assert xi(0, 0, mu, delays) == -51
    assert xi_complex(0, 0, mu, delays) == -51


def test_criterion_06_audit():
    ok, detail = check_6()
    _record(6, ok, detail)
    assert ok, detail


def test_criterion_07_maximal_types():
    ok, detail = check_7()
    _record(7, ok, detail)
    assert ok, detail


def test_criterion_08_theorem_property():
    ok, detail = check_8()
    _record(8, ok, detail)
    assert ok, detail


def test_criterion_09_lemma():
    ok, detail = check_9()
    _record(9, ok, detail)
    assert ok, detail


def test_criterion_10_cosine_vs_complex():
    ok, detail = check_10()
    _record(10, ok, detail)
    assert ok, detail


def test_criterion_11_determinism():
    ok, detail = check_11()
    _record(11, ok, detail)
    assert ok, detail


if __name__ == "__main__":
    checks = [check_1, check_2, check_3, check_4, check_5, check_6, check_7, check_8, check_9, check_10, check_11]
    failed = 0
    for i, fn in enumerate(checks, start=1):
        ok, detail = fn()
        _record(i, ok, detail)
        print(ACCEPTANCE_LINES[i], flush=True)
        failed += not ok
    sys.exit(1 if failed else 0)
