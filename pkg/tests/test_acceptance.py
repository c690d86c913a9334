"""Acceptance suite: every criterion at its stated tolerance, which is exact zero.

Each test prints one line so a `pytest -s` run reads as the acceptance
report.  Two criteria interact with documented transcription corrections
(the nil3_r J table and the h9 2-form); in both cases the suite verifies the
corrected data exactly AND demonstrates that the uncorrected source values
fail, so the corrections are themselves certified, not assumed.
"""

import random
from fractions import Fraction

from bornlab import (
    BilinearForm,
    almost_product,
    anticommutator_defect,
    nabla_form,
    CirclePoint,
    Endomorphism,
    LieAlgebra,
    Matrix,
    Subspace,
    born_connection,
    born_torsion_formula_defect,
    build_almost_kunneth,
    canonical_connection,
    ce_d1,
    ce_d2,
    generalized_torsion_defect,
    integrability_report,
    involution_split,
    is_subalgebra,
    kunneth_connection,
    levi_civita,
    mixed_torsion_defect,
    neutral_metric,
    nijenhuis,
    omega_K_defect,
    pullback,
    recursion_operator,
    s1_family,
    signature_of_symmetric,
    torsion,
    verify_born_identities,
)
from bornlab.exact import basis_vector, determinant, invert, vec_sub
from bornlab.liealg import OneForm
from bornlab.model import _Materialized
from bornlab.multilinear import symmetric_form, two_form

FAMILY_POINTS = [CirclePoint.from_t(t) for t in (0, 1, -1, Fraction(1, 2), 2, Fraction(3, 5))]
FAMILY_POINTS.append(CirclePoint.theta_pi())

_cache = {}


def materialized(entry):
    if entry.name not in _cache:
        _cache[entry.name] = _Materialized(entry.model)
    return _cache[entry.name]


def borns_of(entry):
    return [b for _, b in materialized(entry).built_borns()]


def kunneths_of(entry):
    return [k for _, k in materialized(entry).built_kunneths()]


def hyper_of(entry):
    return [h for _, h in materialized(entry).hypers][0]


def entry_is_integrable(entry, L, k):
    return (
        ce_d2(L, k.omega).is_zero()
        and bool(is_subalgebra(L, k.plus))
        and bool(is_subalgebra(L, k.minus))
    )


def test_criterion_01_nil3_recursion_operators(catalog_models):
    """Computed A, B, J on nil3_r reproduce the source tables entry for entry,
    with one certified correction: the printed Je4 = -e3 is impossible
    (J^2 = -Id fails on span{e3,e4}), the defining relation forces Je4 = e3."""
    hs = hyper_of(catalog_models["nil3_r"])
    a_table = Endomorphism.from_images([[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, -1], [0, 0, -1, 0]])
    b_table = Endomorphism(Matrix.diagonal([1, -1, 1, -1]))
    j_table = Endomorphism.from_images([[0, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, -1], [0, 0, 1, 0]])
    assert (hs.a_op.matrix - a_table.matrix).is_zero()
    assert (hs.b_op.matrix - b_table.matrix).is_zero()
    assert (hs.j_op.matrix - j_table.matrix).is_zero()
    # the uncorrected table is demonstrably inconsistent
    j_printed = Endomorphism.from_images([[0, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, -1], [0, 0, -1, 0]])
    assert not j_printed.is_complex_structure()
    e4, e2 = basis_vector(4, 3), basis_vector(4, 1)
    assert hs.alpha.evaluate(j_printed.apply(e4), e2) != hs.beta.evaluate(e4, e2)
    print("\nACCEPTANCE 1: nil3_r recursion operators reproduced exactly "
          "(J e4 corrected to +e3; printed value fails J^2=-Id): PASS")


def test_criterion_02_hypersymplectic_metric(catalog_models):
    hs = hyper_of(catalog_models["nil3_r"])
    expected = symmetric_form(4, {(1, 4): -1, (2, 3): -1})
    assert hs.metric == expected
    assert signature_of_symmetric(hs.metric.matrix).as_tuple() == (2, 2, 0)
    print("ACCEPTANCE 2: hypersymplectic metric -(a1*a4+a4*a1+a2*a3+a3*a2), signature (2,2,0): PASS")


def test_criterion_03_h4_full_pipeline(catalog_models):
    entry = catalog_models["h4"]
    L = entry.model.algebra
    omega = entry.model.forms["omega"]
    assert ce_d2(L, omega).is_zero()
    k = kunneths_of(entry)[0]
    for sub in (k.plus, k.minus):
        assert sub.dim == 3
        for i, x in enumerate(sub.basis):
            for y in sub.basis[i + 1:]:
                assert omega.evaluate(x, y) == 0
        assert is_subalgebra(L, sub)
    j = entry.model.endos["J"]
    assert nijenhuis(L, j).is_zero()
    assert pullback(j, omega) == omega
    born = borns_of(entry)[0]
    report = verify_born_identities(born)
    assert report.ok and len(report.items) == 37
    assert integrability_report(born).integrable
    print("ACCEPTANCE 3: h4 pipeline (closed, Lagrangian subalgebras, N_J=0, "
          "J*omega=omega, 37 identity/geometry checks, integrable): PASS")


def test_criterion_04_h9_corrected_pipeline(catalog_models):
    entry = catalog_models["h9_corrected"]
    L = entry.model.algebra
    omega = entry.model.forms["omega"]
    assert ce_d2(L, omega).is_zero()
    # the source's printed 2-form fails closedness under its own differentials
    printed = entry.model.forms["omega_printed"]
    d = ce_d2(L, printed)
    assert not d.is_zero()
    assert d.witnesses()[0] == ((1, 2, 4), 8)
    # and the stated differentials hold for the corrected brackets
    assert ce_d1(L, OneForm.dual(6, 5)) == two_form(6, {(1, 2): 1})
    assert ce_d1(L, OneForm.dual(6, 6)) == two_form(6, {(1, 4): 1, (2, 5): 1})
    born = borns_of(entry)[0]
    assert verify_born_identities(born).ok
    assert integrability_report(born).integrable
    assert pullback(entry.model.endos["J"], omega) == omega
    print("ACCEPTANCE 4: h9_corrected pipeline passes; printed 2-form fails "
          "closedness with witness d(e1,e2,e4) = 8: PASS")


def test_criterion_05_s1_family(catalog_models):
    entry = catalog_models["nil3_r"]
    hs = hyper_of(entry)
    jt = entry.model.endos["jtilde"]
    # hypothesis checks, exact: built into s1_family, re-done explicitly here
    assert jt.is_complex_structure()
    assert anticommutator_defect(jt, hs.a_op).is_zero()
    assert anticommutator_defect(jt, hs.b_op).is_zero()
    assert pullback(jt, hs.metric) == hs.metric.negated()
    for p in FAMILY_POINTS:
        member = s1_family(hs, jt, p)
        assert verify_born_identities(member).ok, p.label()
        assert integrability_report(member).integrable, p.label()
    print("ACCEPTANCE 5: circle family valid and integrable at t in "
          "{0, 1, -1, 1/2, 2, 3/5} and theta=pi: PASS")


def test_criterion_06_connection_collapse(catalog_models):
    checked = 0
    for name, entry in catalog_models.items():
        L = entry.model.algebra
        for k in kunneths_of(entry):
            if not entry_is_integrable(entry, L, k):
                continue
            lc = levi_civita(L, neutral_metric(k))
            nk = kunneth_connection(k)
            nc = canonical_connection(L, neutral_metric(k), almost_product(k))
            assert lc.gamma == nk.gamma == nc.gamma, name
            checked += 1
    assert checked >= 9
    print(f"ACCEPTANCE 6: nabla^c = nabla^K = nabla^g on {checked} integrable splittings: PASS")


def test_criterion_07_born_connection_theorem(catalog_models):
    for name in ("h4", "h9_corrected", "h8"):
        born = borns_of(catalog_models[name])[0]
        L = born.algebra
        nb = born_connection(born)
        nc = canonical_connection(L, born.g, born.a_op)
        assert generalized_torsion_defect(L, nb, nc, born.g).is_zero(), name
        for form in (born.g, born.h, born.omega):
            assert nabla_form(L, nb, form).is_zero(), name
        assert "b_average_equals_j_average" in nb.certified
    entry = catalog_models["nil3_r"]
    hs = hyper_of(entry)
    jt = entry.model.endos["jtilde"]
    gammas = set()
    for p in FAMILY_POINTS:
        member = s1_family(hs, jt, p)
        nb = born_connection(member)
        nc = canonical_connection(member.algebra, member.g, member.a_op)
        assert generalized_torsion_defect(member.algebra, nb, nc, member.g).is_zero()
        for form in (member.g, member.h, member.omega):
            assert nabla_form(member.algebra, nb, form).is_zero()
        gammas.add(nb.gamma)
    assert len(gammas) == 1
    print("ACCEPTANCE 7: Born connection compatible with zero generalized torsion "
          "on h4, h9, h8 and all nil3_r family points; theta-independent: PASS")


def test_criterion_08_torsion_iff_integrability(catalog_models):
    for name, entry in catalog_models.items():
        L = entry.model.algebra
        for k in kunneths_of(entry):
            integrable = entry_is_integrable(entry, L, k)
            assert torsion(L, kunneth_connection(k)).is_zero() == integrable, name
    fixture = catalog_models["nil3_r_nonintegrable_fixture"]
    k = kunneths_of(fixture)[0]
    L = fixture.model.algebra
    nk = kunneth_connection(k)
    assert not torsion(L, nk).is_zero()
    assert mixed_torsion_defect(L, nk, k.plus, k.minus) == []
    print("ACCEPTANCE 8: torsion(nabla^K) = 0 iff integrable; nonzero on the "
          "fixture with empty mixed part: PASS")


def test_criterion_09_omega_k_identity(catalog_models):
    for entry in catalog_models.values():
        for k in kunneths_of(entry):
            assert omega_K_defect(k).is_zero()
        for born in borns_of(entry):
            assert omega_K_defect(born.underlying_kunneth()).is_zero()
    rng = random.Random(20260808)
    algebras = [
        LieAlgebra(4, {(1, 2): {3: 1}}),
        LieAlgebra.abelian(4),
        LieAlgebra(4, {(1, 2): {2: 1}}),
    ]
    checked = 0
    while checked < 100:
        L = rng.choice(algebras)
        while True:
            cols = [[Fraction(rng.randint(-3, 3), rng.randint(1, 3)) for _ in range(4)] for _ in range(4)]
            p = Matrix.from_columns(cols)
            if determinant(p) != 0:
                break
        while True:
            s = Matrix([[Fraction(rng.randint(-3, 3), rng.randint(1, 3)) for _ in range(2)] for _ in range(2)])
            if determinant(s) != 0:
                break
        blk = [[0] * 4 for _ in range(4)]
        for i in range(2):
            for j in range(2):
                blk[i][2 + j] = s.rows[i][j]
                blk[2 + j][i] = -s.rows[i][j]
        p_inv = invert(p)
        w = p_inv.transpose() * Matrix(blk) * p_inv
        k = build_almost_kunneth(
            L,
            BilinearForm(w, "antisymmetric"),
            Subspace(4, [p.column(0), p.column(1)]),
            Subspace(4, [p.column(2), p.column(3)]),
        )
        assert omega_K_defect(k).is_zero()
        checked += 1
    print(f"ACCEPTANCE 9: omega_K relation exactly zero on all entries, the fixture "
          f"and {checked} random dim-4 structures: PASS")


def test_criterion_10_signature_laws(catalog_models):
    for name, entry in catalog_models.items():
        for born in borns_of(entry):
            n = born.algebra.n
            assert signature_of_symmetric(born.g.matrix).as_tuple() == (n // 2, n // 2, 0), name
            sig_h = signature_of_symmetric(born.h.matrix)
            assert sig_h.null == 0 and sig_h.positive % 2 == 0 and sig_h.negative % 2 == 0, name
    torus = borns_of(catalog_models["torus_2_2"])[0]
    assert signature_of_symmetric(torus.h.matrix).as_tuple() == (2, 2, 0)
    print("ACCEPTANCE 10: signature(g) neutral and signature(h) = (2p,2q,0) on every "
          "Born entry; torus_2_2 h has signature (2,2,0): PASS")


def test_criterion_11_born_torsion_formula(catalog_models):
    born = borns_of(catalog_models["h4"])[0]
    report = born_torsion_formula_defect(born)
    assert report.ok, [i.name for i in report.failures()]
    # independent recomputation of the mixed-pair formula
    L = born.algebra
    nk = kunneth_connection(born.underlying_kunneth())
    nb = born_connection(born)
    split = involution_split(born.b_op)
    for x in split.plus.basis:
        for y in split.minus.basis:
            t = vec_sub(vec_sub(nb.apply(x, y), nb.apply(y, x)), L.bracket(x, y))
            lhs = tuple(
                -p + m
                for p, m in zip(split.pi_plus.apply(nk.apply(x, y)), split.pi_minus.apply(nk.apply(y, x)))
            )
            assert t == lhs
    print("ACCEPTANCE 11: Born torsion matches -pi+(nabla^K_x y) + pi-(nabla^K_y x) "
          "on mixed pairs and vanishes on same-eigenspace pairs (h4): PASS")


def test_criterion_12_property_suites(catalog_models):
    rng = random.Random(31415)
    # d^2 = 0 on every catalog algebra, basis and random one-forms
    algebras = {entry.model.algebra for entry in catalog_models.values()}
    for L in algebras:
        for i in range(L.n):
            assert ce_d2(L, ce_d1(L, OneForm.dual(L.n, i + 1))).is_zero()
        for _ in range(3):
            a = OneForm([Fraction(rng.randint(-3, 3), rng.randint(1, 3)) for _ in range(L.n)])
            assert ce_d2(L, ce_d1(L, a)).is_zero()
    # recursion composition law on random non-degenerate forms
    for _ in range(25):
        n = rng.choice((2, 4))
        forms = []
        while len(forms) < 3:
            m = Matrix([[Fraction(rng.randint(-3, 3), rng.randint(1, 2)) for _ in range(n)] for _ in range(n)])
            if determinant(m) != 0:
                forms.append(BilinearForm.detect(m))
        a, b, c = forms
        assert recursion_operator(a, c) == recursion_operator(a, b).compose(recursion_operator(b, c))
    # involution split algebra on the catalog's product structures
    count = 0
    for entry in catalog_models.values():
        for born in borns_of(entry):
            for op in (born.a_op, born.b_op):
                split = involution_split(op)
                n = op.n
                assert split.pi_plus.matrix + split.pi_minus.matrix == Matrix.identity(n)
                assert split.pi_plus.matrix * split.pi_minus.matrix == Matrix.zero(n)
                assert split.pi_plus.matrix - split.pi_minus.matrix == op.matrix
                count += 1
            # two-out-of-three cross-check
            report = integrability_report(born)
            assert sum(report.vanishing.values()) != 2
            assert report.nijenhuis_matches_subalgebras
    assert count >= 20
    print("ACCEPTANCE 12: d^2 = 0, recursion composition, involution-split algebra "
          "and two-out-of-three Nijenhuis cross-checks: PASS")
