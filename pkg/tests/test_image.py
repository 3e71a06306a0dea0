import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tckit import gl2, image, intmath
from tckit.curve import invariants, trace_ap
from tckit.errors import CMCurveError
from tckit.image import ImageClass, Verdict

from .conftest import CURVE_37A, NON_SEMISTABLE
from .oracles import upper_triangular_signatures


@pytest.mark.parametrize("ell", [3, 5, 7])
def test_borel_table_matches_enumeration(ell):
    table = image.build_signature_table(ell)
    assert table.pairs(Verdict.BOREL) == upper_triangular_signatures(ell)


@pytest.mark.parametrize("ell", [3, 5, 7])
def test_class_tables_inside_full(ell):
    table = image.build_signature_table(ell)
    for v, sigs in table.classes.items():
        assert sigs <= table.full
        assert sigs != table.full, v


def test_split_cartan_has_antidiagonal_pairs():
    table = image.build_signature_table(5)
    assert {(0, d) for d in range(1, 5)} <= table.pairs(Verdict.SPLIT_CARTAN_NORMALIZER)


@pytest.mark.parametrize("ell", [5, 7])
def test_exceptional_class_present(ell):
    table = image.build_signature_table(ell)
    rep = table.representatives[Verdict.EXCEPTIONAL]
    scalars = [x for x in rep.elements if x[1] == x[2] == 0 and x[0] == x[3]]
    assert rep.order // len(scalars) == 24


def test_no_exceptional_class_at_3():
    assert Verdict.EXCEPTIONAL not in image.build_signature_table(3).classes


def test_pairs_alone_cannot_certify_full_at_3():
    # the nonsplit Cartan normalizer realizes every (trace, det) pair mod 3
    table = image.build_signature_table(3)
    full_pairs = frozenset((t, d) for t, d, _ in table.full)
    assert table.pairs(Verdict.NONSPLIT_CARTAN_NORMALIZER) == full_pairs


@pytest.mark.parametrize("ell", [3, 5, 7])
def test_representatives_have_expected_orders(ell):
    reps = image.build_signature_table(ell).representatives
    assert reps[Verdict.BOREL].order == (ell - 1) ** 2 * ell
    assert reps[Verdict.SPLIT_CARTAN_NORMALIZER].order == 2 * (ell - 1) ** 2
    assert reps[Verdict.NONSPLIT_CARTAN_NORMALIZER].order == 2 * (ell * ell - 1)


@settings(max_examples=200)
@given(st.sampled_from([3, 5, 7]), st.integers(0, 6), st.integers(0, 6), st.integers(0, 6), st.integers(0, 6))
def test_element_signature_is_conjugation_invariant(ell, a, b, c, d):
    x = (a % ell, b % ell, c % ell, d % ell)
    if (x[0] * x[3] - x[1] * x[2]) % ell == 0:
        return
    for g in gl2.full_group(ell).generators:
        assert image.element_signature(gl2.conjugate(g, x, ell), ell) == image.element_signature(x, ell)


def test_frobenius_signature_needs_rank_only_for_unipotent_pair():
    assert image.frobenius_signature(0, 1, 3) == (0, 1, 0)
    assert image.frobenius_signature(3, 2, 5) == (3, 2, 1)
    with pytest.raises(ValueError):
        image.frobenius_signature(2, 1, 5)
    assert image.frobenius_signature(2, 1, 5, rank=2) == (2, 1, 2)


def test_certificate_validity():
    table = image.build_signature_table(5)
    assert not image.certificate_is_valid(table, table.classes[Verdict.BOREL])
    assert image.certificate_is_valid(table, table.full)


def test_37a_is_full_everywhere(e37a):
    for ell in (2, 3, 5, 7):
        im = image.classify_mod_ell(e37a, ell, 50)
        assert im.verdict is Verdict.FULL and not im.heuristic
        if ell != 2:
            assert image.revalidate(e37a, im)
            assert max(im.certificate) <= 50


def test_37a_certificates(e37a):
    certs = {ell: image.classify_mod_ell(e37a, ell, 1000).certificate for ell in (3, 5, 7)}
    assert certs == {3: (2, 7), 5: (2, 3), 7: (2, 3)}


def test_mod2_examples():
    cm = image.mod2_image(invariants(0, 0, 0, -1, 0))
    assert cm.order == 1 and cm.verdict is Verdict.BOREL
    E = invariants(0, 1, 0, -1, 0)
    assert image.two_torsion_roots(E) == {0}
    im = image.mod2_image(E)
    assert im.order == 2 and not im.is_full
    assert image.mod2_image(invariants(*CURVE_37A)).order == 6


def test_mod2_cyclic_cubic():
    # x^3 - 3x + 1 has discriminant 81 and no rational roots
    E = invariants(0, 0, 0, -3, 1)
    im = image.mod2_image(E)
    assert im.order == 3 and im.verdict is Verdict.NONSPLIT_CARTAN_NORMALIZER


def test_mod2_parity_cross_check(semistable_corpus):
    # a rational 2-torsion point makes #E(F_p) even at every good odd prime
    for rec in semistable_corpus:
        E = rec.curve()
        has_root = bool(image.two_torsion_roots(E))
        parities = {trace_ap(E, p) % 2 for p in range(3, 200, 2) if intmath.is_prime(p) and E.disc % p}
        if has_root:
            assert parities == {0}, rec.label
        if image.mod2_image(E).is_full:
            assert 1 in parities, rec.label


def test_11a1_five_is_borel(e11a1):
    im = image.classify_mod_ell(e11a1, 5, 1000)
    assert im.verdict is Verdict.BOREL and im.heuristic
    assert Verdict.BOREL in im.matched


def test_11a1_five_isogeny_factor(e11a1):
    # the 5-division polynomial has a rational root: x = 5 for this model
    from tckit.curve import division_polynomial

    f5 = division_polynomial(e11a1, 5)
    assert sum(c * 5**i for i, c in enumerate(f5)) == 0


def test_monotone_in_prime_limit(e37a):
    # once Full is certified at some limit, every larger limit keeps it
    first = None
    for limit in (3, 5, 7, 11, 50, 200):
        im = image.classify_mod_ell(e37a, 3, limit)
        if first is not None:
            assert im.is_full
        if im.is_full and first is None:
            first = limit
    assert first is not None


def test_undetermined_with_no_samples(e37a):
    im = image.classify_mod_ell(e37a, 3, 1)
    assert im.verdict is Verdict.UNDETERMINED and im.samples == 0 and im.heuristic
    # one sample leaves a non-Full class standing
    assert not image.classify_mod_ell(e37a, 3, 2).is_full


def test_revalidate_rejects_non_signature(e37a):
    with pytest.raises(ValueError):
        image.revalidate(e37a, image.classify_mod_ell(e37a, 2))


def test_exceptional_set_37a(e37a):
    exc = image.exceptional_set(e37a, True)
    assert exc.primes == [2, 3, 5, 37]
    assert exc.nonfull == []
    assert exc.images[37].basis == "mazur"


def test_exceptional_set_requires_assertion(e37a):
    with pytest.raises(CMCurveError):
        image.exceptional_set(e37a, False)


def test_exceptional_set_non_semistable():
    exc = image.exceptional_set(invariants(*NON_SEMISTABLE["44a1"]), True)
    assert 11 in exc.primes and exc.images[11].basis == "assumed"
    assert exc.images[11].heuristic and exc.conditional_reasons


def _inj(ell, verdict):
    return ImageClass(ell, verdict, heuristic=False, basis="injected")


def test_synthetic_injection_all_full():
    images = {ell: _inj(ell, Verdict.FULL) for ell in (2, 3, 5, 7)}
    assert image.assemble_S([37], images).primes == [2, 3, 5, 37]


def test_synthetic_injection_borel_at_7():
    images = {ell: _inj(ell, Verdict.FULL) for ell in (2, 3, 5)}
    images[7] = _inj(7, Verdict.BOREL)
    exc = image.assemble_S([11], images)
    assert exc.primes == [2, 3, 5, 7, 11]
    assert exc.nonfull == [7]


@settings(max_examples=50)
@given(
    st.lists(st.sampled_from([2, 3, 5, 7, 11, 13, 37, 43]), max_size=4),
    st.dictionaries(st.sampled_from([2, 3, 5, 7, 13]), st.sampled_from(list(Verdict))),
)
def test_assemble_S_definition(disc_primes, verdicts):
    images = {ell: _inj(ell, v) for ell, v in verdicts.items()}
    exc = image.assemble_S(disc_primes, images)
    nonfull = {ell for ell, v in verdicts.items() if v is not Verdict.FULL}
    assert set(exc.primes) == {2, 3, 5} | set(disc_primes) | nonfull
    assert exc.primes == sorted(exc.primes)
