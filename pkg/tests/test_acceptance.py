"""Acceptance criteria, one test per criterion.

Each test prints a single `criterion N: PASS/FAIL` line (visible with
`pytest -s` or in the verbose test listing through the test name) and
asserts the criterion exactly as stated.  Three criteria (4, 7 and 9)
assert statements whose desk-scale verification fails on explicit
counterexamples; they are marked strict-xfail so the defect stays
visible without masking regressions elsewhere, and companion tests pin
the completed generator families that do certify generation.
"""

import time
from fractions import Fraction as F

import pytest

from constalg import checks, kernel, linalg
from constalg.exprio import from_json, parse, render, to_json
from constalg.grassmann import grassmann_generators, integrated_hooks
from constalg.poly import nowicki_generators
from constalg.uvconstants import (
    admissible_indices,
    canonical_basis,
    completed_module_generators,
    module_generators,
    relation_names,
    verify_relation,
)


def _report(number: int, name: str, ok: bool, detail: str, started: float) -> None:
    status = "PASS" if ok else "FAIL"
    print(f"criterion {number} ({name}): {status} [{time.time() - started:.1f}s] {detail}")


def test_criterion_01_nowicki_baseline():
    started = time.time()
    candidates = [(render(g), g) for g in nowicki_generators(2)]
    reports = kernel.span_check("comm", 2, candidates, 6)
    bad = [r for r in reports if not r.verified]
    _report(1, "commutative baseline d=2 deg<=6", not bad, f"{len(reports)} components", started)
    assert not bad, [(r.key, r.kernel_dim, r.span_dim) for r in bad]


def test_criterion_02_relations():
    started = time.time()
    failures = []
    count = 0
    for d in range(1, 5):
        for name in relation_names():
            for idx in admissible_indices(name, d):
                count += 1
                if verify_relation(name, idx, d):
                    failures.append((d, name, idx))
    _report(2, "relations d<=4", not failures, f"{count} instances", started)
    assert not failures, failures


def test_criterion_03_canonical_basis():
    started = time.time()
    rep2 = checks.check_canonical_basis(2, 5)
    rep3 = checks.check_canonical_basis(3, 4)
    ok = rep2.ok and rep3.ok
    _report(
        3,
        "canonical basis d=2 deg<=5, d=3 deg<=4",
        ok,
        f"{rep2.cases + rep3.cases} components",
        started,
    )
    assert ok, rep2.failures + rep3.failures


_GENERATION_GAP = (
    "the published generating families stop spanning in total degree 4: "
    "at d=2, pair degree (2,2), the constant "
    "x2*x4*[x3,x1] - x2*x3*[x4,x1] - x1*x4*[x3,x2] + x1*x3*[x4,x2] "
    "passes the image criterion but is outside the generated module "
    "(kernel 25 vs span 24); see the companion completed-family test"
)


@pytest.mark.xfail(strict=True, reason=_GENERATION_GAP)
def test_criterion_04_metabelian_generation():
    started = time.time()
    gens = [(g.label(), g.preimage) for g in module_generators(2)]
    module_reports = kernel.module_span_check(2, gens, 5)
    candidates = kernel.meta_algebra_candidates(2, 5, gens)
    algebra_reports = kernel.span_check("meta", 2, candidates, 5)
    bad = [r for r in module_reports + algebra_reports if not r.verified]
    detail = "; ".join(
        f"key={r.key} kernel={r.kernel_dim} span={r.span_dim}" for r in bad[:4]
    )
    _report(4, "metabelian generation d=2 deg<=5", not bad, detail, started)
    for r in bad[:2]:
        for witness in r.missing[:1]:
            print(f"   not generated at {r.key}: {witness}")
    assert not bad, detail


def test_criterion_04_companion_completed_family():
    # the gamma-twisted u-determinant family closes every component
    started = time.time()
    gens = [(g.label(), g.preimage) for g in completed_module_generators(2)]
    module_reports = kernel.module_span_check(2, gens, 5)
    candidates = kernel.meta_algebra_candidates(2, 5, gens)
    algebra_reports = kernel.span_check("meta", 2, candidates, 5)
    bad = [r for r in module_reports + algebra_reports if not r.verified]
    _report(4, "metabelian generation, completed family", not bad, "", started)
    assert not bad, [(r.key, r.kernel_dim, r.span_dim) for r in bad]


def test_criterion_05_embedding():
    started = time.time()
    hom = checks.check_embedding_homomorphism(2, 200, 17)
    inj = checks.check_embedding_injectivity(2, 4)
    agree = checks.check_image_criterion(2, 4)
    ok = hom.ok and inj.ok and agree.ok
    _report(
        5,
        "embedding d=2",
        ok,
        f"{hom.cases} products, {inj.cases} components",
        started,
    )
    assert ok, hom.failures + inj.failures + agree.failures


def test_criterion_06_grassmann_rank_one_closed_form():
    started = time.time()
    failures = []
    for n in range(2, 7):
        basis = kernel.kernel_basis("grass", 1, (n,))
        expected = {
            render(parse(f"x1^{n}", "grass", 1)),
            render(parse(f"x1^{n - 2}*[x1,y1]" if n > 2 else "[x1,y1]", "grass", 1)),
        }
        if len(basis) != 2 or {render(e) for e in basis} != expected:
            failures.append(n)
    _report(6, "rank-1 closed form deg 2..6", not failures, "", started)
    assert not failures, failures


@pytest.mark.xfail(
    strict=True,
    reason=(
        "the x/v/w/z families stop spanning in total degree 4: at d=2, pair "
        "degree (2,2), the constant y1*y2*[x1,x2] - y1*x2*[y1,x2] - "
        "x1*y2*[x1,y2] + x1*x2*[y1,y2] is outside the generated subalgebra "
        "(kernel 12 vs span 11); the integrated-hook companion test closes it"
    ),
)
def test_criterion_07_grassmann_generation():
    started = time.time()
    candidates = [(g.label(), e) for g, e in grassmann_generators(2, max_level=1)]
    reports = kernel.span_check("grass", 2, candidates, 5)
    bad = [r for r in reports if not r.verified]
    detail = "; ".join(
        f"key={r.key} kernel={r.kernel_dim} span={r.span_dim}" for r in bad[:4]
    )
    _report(7, "grassmann generation d=2 deg<=5", not bad, detail, started)
    for r in bad[:2]:
        for witness in r.missing[:1]:
            print(f"   not generated at {r.key}: {witness}")
    assert not bad, detail


def test_criterion_07_companion_integrated_hooks():
    started = time.time()
    candidates = [(g.label(), e) for g, e in grassmann_generators(2, max_level=1)]
    candidates += integrated_hooks(2)
    reports = kernel.span_check("grass", 2, candidates, 5)
    bad = [r for r in reports if not r.verified]
    _report(7, "grassmann generation, integrated hooks", not bad, "", started)
    assert not bad, [(r.key, r.kernel_dim, r.span_dim) for r in bad]


def test_criterion_08_identity_suites():
    started = time.time()
    reports = checks.identity_suites(2, 1000, 2026)
    ok = all(r.ok for r in reports)
    _report(8, "identity suites, 1000 cases each", ok, f"{len(reports)} suites", started)
    assert ok, [(r.name, r.failures[:2]) for r in reports if not r.ok]


@pytest.mark.xfail(
    strict=True,
    reason=(
        "the ideal-membership claims fail in degree 2 already: "
        "v21 - v12 is {x_d,y_d}-homogeneous, killed by every evaluation, "
        "but its commutator part [x1,y2] - [y1,x2] cannot come from the "
        "degree-2 slice of either stated left ideal"
    ),
)
def test_criterion_09_evaluation_kernel_ideals():
    started = time.time()
    single = checks.check_evaluation_kernel_ideal(2, 4, [F(1)])
    joint = checks.check_joint_evaluation_kernel_ideal(4)
    ok = single.ok and joint.ok
    detail = f"{single.cases + joint.cases} kernel elements checked"
    _report(9, "evaluation-kernel ideal membership d=2 deg<=4", ok, detail, started)
    for witness in (single.failures + joint.failures)[:3]:
        print(f"   outside the stated ideal: {witness}")
    assert ok, (single.failures + joint.failures)[:4]


def test_criterion_10_round_trips():
    started = time.time()
    failures = []
    for tag in ("comm", "uv", "meta", "grass", "module"):
        report = checks.check_roundtrips(tag, 2, 1000, 4096)
        if not report.ok:
            failures.append((tag, report.failures[:2]))
    _report(10, "round trips, 1000 per algebra", not failures, "", started)
    assert not failures, failures
