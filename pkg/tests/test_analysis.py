from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from twisted_thue.analysis import (
    DecompositionError,
    Epsilon,
    HypothesisViolated,
    LinearFormKind,
    NotASolutionError,
    UnsupportedCase,
    BetaDecomposition,
    approx_log_y,
    case_check,
    check_condition,
    classify_solution,
    compute_c1,
    decompose_beta,
    decompose_unit,
    linear_form,
    log_alpha_quotient,
    separation,
    solve_case,
    synthetic_record,
    unit_linear_form,
    verify_lemma,
)
from twisted_thue.cubic_field import logs_at
from twisted_thue.numerics import RealEnclosure, Status, log_enclosure
from twisted_thue.order import UnitWord, unit_word_to_element
from twisted_thue.twisted_form import alpha_enclosures, evaluate_form

mpmath.mp.prec = 200


def solutions(n, s, t, bound=40):
    return [
        (x, y)
        for x in range(-bound, bound + 1)
        for y in range(-bound, bound + 1)
        if abs(evaluate_form(n, s, t, x, y)) == 1
    ]


# admissibility ---------------------------------------------------------------


def test_condition_examples():
    assert check_condition(5, 1, Fraction(1, 2))
    assert not check_condition(3, -3, Fraction(1, 2))
    assert not check_condition(3, -3, 100)
    assert not check_condition(2, 1, 1)


@given(st.integers(-50, 50), st.integers(-50, 50))
def test_separation_symmetric(s, t):
    assert separation(s, t) == separation(t, s)
    assert check_condition(s, t, Fraction(1, 10)) == check_condition(t, s, Fraction(1, 10))


def test_epsilon_positive():
    with pytest.raises(ValueError):
        Epsilon(0)


def test_c1_examples():
    c1 = compute_c1(Fraction(1, 10), 1000, 10)
    expected = mpmath.mpf(1) / 10 - 3 * (mpmath.mpf(1) / 1000 + mpmath.mpf(1) / 10 ** 6) / mpmath.log(1000)
    assert abs(c1 - Fraction(str(expected))) < Fraction(1, 10 ** 30)
    assert c1 <= Fraction(str(expected)) + Fraction(1, 10 ** 35)
    assert abs(float(c1 * 10) * float(mpmath.log(1000)) - 6.88) < 0.01
    assert compute_c1(Fraction(1, 10), 3, 1) is None


def test_c1_monotone_in_n():
    values = [compute_c1(Fraction(1, 10), n, 50) for n in (100, 1000, 10 ** 5, 10 ** 9)]
    assert all(v is not None for v in values)
    assert values == sorted(values)
    assert values[-1] < Fraction(1, 10)


def test_c1_tau_only_affects_feasibility():
    a = compute_c1(Fraction(1, 10), 1000, 10)
    b = compute_c1(Fraction(1, 10), 1000, 40)
    assert a == b
    assert compute_c1(Fraction(1, 10), 1000, 1) is None


# classification ----------------------------------------------------------------


def test_classify_tie_at_y0():
    r = classify_solution(1, 0, 3, 1, 0)
    assert r.j == 0 and not r.certified and "tie" in r.note


def test_classify_examples():
    r = classify_solution(-1, 1, 3, 1, 0)
    assert r.certified and r.j == 2 and (r.k, r.l) == (0, 1)
    r = classify_solution(0, 1, 5, 2, -1)
    mags = [abs(float(a.mid)) for a in alpha_enclosures(5, 2, -1, 128)]
    assert r.j == mags.index(min(mags))


def test_classify_rejects_non_solutions():
    with pytest.raises(NotASolutionError):
        classify_solution(2, 3, 3, 1, 0)


def test_classification_invariants():
    for n, s, t in ((3, 1, 1), (4, -2, 1), (5, 2, 2)):
        for x, y in solutions(n, s, t, 30):
            if y == 0:
                continue
            r = classify_solution(x, y, n, s, t)
            assert {r.j, r.k, r.l} == {0, 1, 2} and r.k < r.l
            b = [abs(e) for e in r.beta_enclosures]
            assert b[r.j].certainly_le(b[r.k]) and b[r.j].certainly_le(b[r.l])
            a = [abs(e) for e in r.alpha_enclosures]
            assert r.u in (r.j, r.k) and a[r.u].certainly_ge(a[r.j + r.k - r.u])
            assert r.v in (r.j, r.l) and a[r.v].certainly_ge(a[r.j + r.l - r.v])
            order = r.alpha_order
            assert a[order[0]].certainly_ge(a[order[1]]) and a[order[1]].certainly_ge(a[order[2]])


# decomposition -------------------------------------------------------------------


def test_decompose_examples():
    assert decompose_beta(1, 0, 3, 1, 1).word == UnitWord(1, 0, 0)
    for n, s, t in ((3, 1, 0), (7, 2, -3), (10, -4, 5)):
        d = decompose_beta(0, 1, n, s, t)
        assert d.word == UnitWord(-1, s - t, -t) and d.exact_verified


def test_decompose_matches_exact_beta():
    for n, s, t in ((3, 1, 0), (4, 2, -1)):
        for x, y in solutions(n, s, t, 40):
            d = decompose_beta(x, y, n, s, t)
            alpha0 = unit_word_to_element(UnitWord(1, s - t, -t), n)
            assert unit_word_to_element(d.word, n) == x - alpha0 * y


def test_decompose_rejects_non_units():
    with pytest.raises(NotASolutionError):
        decompose_beta(2, 1, 3, 1, 0)


@settings(max_examples=60, deadline=None)
@given(st.integers(3, 50), st.sampled_from([1, -1]), st.integers(-10, 10), st.integers(-10, 10))
def test_decompose_unit_round_trip(n, sign, a, b):
    w = UnitWord(sign, a, b)
    assert decompose_unit(unit_word_to_element(w, n)).word == w


def test_decompose_unit_rejects_non_units():
    from twisted_thue.order import OrderElement

    with pytest.raises(DecompositionError):
        decompose_unit(OrderElement(5, 2, 1, 0))


# log quotients and linear forms --------------------------------------------------------


def test_log_alpha_quotient_examples():
    A, B, enc = log_alpha_quotient(0, 1, 100, 5, 1)
    assert (A, B) == (9, 3)
    A, B, enc = log_alpha_quotient(0, 1, 100, 0, 0)
    assert (A, B) == (0, 0) and enc == RealEnclosure.exact(0)
    A, B, enc = log_alpha_quotient(2, 1, 7, 1, 1)
    assert (A, B) == (2, 1)
    alphas = alpha_enclosures(7, 1, 1, 128)
    direct = log_enclosure(abs(alphas[2]), 128) - log_enclosure(abs(alphas[1]), 128)
    assert enc.overlaps(direct)
    A, B, _ = log_alpha_quotient(0, 2, 9, 4, -1)
    assert (A, B) == (4 - 2 * -1, -(4 - 1))


def test_lambda_matches_direct_evaluation():
    for x, y in solutions(3, 1, 1, 30):
        if y == 0:
            continue
        r = classify_solution(x, y, 3, 1, 1)
        rep = linear_form(r, LinearFormKind.LAMBDA)
        a = alpha_enclosures(3, 1, 1, 256)
        b = [x - e * y for e in a]
        L = lambda v: log_enclosure(abs(v), 256)
        direct = L(b[r.l]) - L(b[r.k]) + L(a[r.j] - a[r.k]) - L(a[r.j] - a[r.l])
        assert rep.enclosure.overlaps(direct)
        assert rep.nonzero_certified
        if rep.bound_applies:
            assert abs(rep.enclosure).certainly_le(rep.upper_bound)


def test_lambda_prime_coefficients_are_exact():
    for n, s, t in ((3, 1, 0), (5, 2, -1), (4, -1, -1)):
        for x, y in solutions(n, s, t, 30):
            if y == 0:
                continue
            r = classify_solution(x, y, n, s, t)
            rep = linear_form(r, LinearFormKind.LAMBDA_PRIME)
            l0, _, l2 = logs_at(n, 128)
            assert rep.enclosure.overlaps(rep.coeff_lam0 * l0 + rep.coeff_lam2 * l2)
            assert abs(rep.enclosure).certainly_le(rep.upper_bound) or not rep.bound_applies


def test_lambda_dblprime_nonzero_everywhere():
    for n, s, t in ((3, 1, 0), (3, -3, -3), (5, 2, -1)):
        for x, y in solutions(n, s, t, 30):
            if y == 0:
                continue
            rep = linear_form(classify_solution(x, y, n, s, t), LinearFormKind.LAMBDA_DBLPRIME)
            assert rep.nonzero_certified
            assert rep.coeff_log2 in (-1, 0, 1)


def test_dblprime_alpha_j_maximal_branch():
    record = synthetic_record(1000, 2, -1, j=0)
    assert record.u == record.v == 0
    bk = UnitWord(1, 3, 1)
    rep = unit_linear_form(record, [UnitWord(1, 0, 0), bk, UnitWord(-1, 3, 1)])
    assert rep.branch == "alpha_j_maximal" and rep.coeff_log2 == 1 and rep.nonzero_certified
    l0, _, l2 = logs_at(1000, 128)
    assert rep.enclosure.overlaps(rep.coeff_lam0 * l0 + rep.coeff_lam2 * l2 - log_enclosure(RealEnclosure.exact(2), 128))


def test_dblprime_falls_through_when_lambda_prime_nonzero():
    rep = linear_form(classify_solution(-9, 7, 3, 1, 0), "LAMBDA_DBLPRIME")
    assert rep.branch == "lambda_prime_nonzero" and rep.coeff_log2 == 0


def test_y_one_lambda_reduces_to_alpha_logs():
    r = classify_solution(0, 1, 3, 1, 0)
    rep = linear_form(r, LinearFormKind.LAMBDA)
    A, B, quot = log_alpha_quotient(r.l, r.k, 3, 1, 0, 128)
    a = alpha_enclosures(3, 1, 0, 128)
    rest = log_enclosure(abs(a[r.j] - a[r.k]), 128) - log_enclosure(abs(a[r.j] - a[r.l]), 128)
    assert rep.enclosure.overlaps(quot + rest)


def test_linear_form_rejects_synthetic():
    with pytest.raises(ValueError):
        linear_form(synthetic_record(10, 1, 2), LinearFormKind.LAMBDA)


# log|y| approximation --------------------------------------------------------------


def test_approx_log_y_examples():
    r = classify_solution(0, 1, 3, 1, 0)
    approx = approx_log_y(r)
    a = alpha_enclosures(3, 1, 0, 128)
    expected = -log_enclosure(abs(1 - a[r.j].div(a[r.k], 128)), 128)
    assert approx.enclosure.overlaps(expected)

    r = classify_solution(-1, 1, 3, 1, 0)
    assert approx_log_y(r).contains_log_y


def test_approx_log_y_large_y():
    # x = nearest integer to alpha_0 y gives a unit only in special cases, so use genuine solutions
    for n, s, t in ((3, 1, 0), (4, 1, 1), (6, -2, 1)):
        for x, y in solutions(n, s, t, 60):
            if abs(y) >= 2:
                assert approx_log_y(classify_solution(x, y, n, s, t)).contains_log_y


def test_approx_log_y_needs_nonzero_y():
    with pytest.raises(HypothesisViolated):
        approx_log_y(classify_solution(1, 0, 3, 1, 0))


# case analysis -----------------------------------------------------------------------

CASES = {(0, 0): (2, -1), (0, 2): (4, 3), (1, 0): (-3, -4), (1, 2): (-2, 1)}


@pytest.mark.parametrize("uv", sorted(CASES))
def test_synthetic_records_hit_each_case(uv):
    s, t = CASES[uv]
    r = synthetic_record(1000, s, t, j=0)
    assert (r.u, r.v) == uv and r.certified


@pytest.mark.parametrize("uv", sorted(CASES))
def test_case_solutions_satisfy_relations(uv):
    s, t = CASES[uv]
    r = synthetic_record(1000, s, t, j=0)
    a, b = solve_case(*uv, s, t)
    report = case_check(r, BetaDecomposition(UnitWord(1, a, b), True))
    assert report.relations_hold and report.expected == (a, b)


def test_case_table_entries():
    s, t = 7, 3
    assert solve_case(0, 0, s, t) == (0, 0)
    assert solve_case(0, 2, s, t) == (s, s - t)
    assert solve_case(1, 2, s, t) == (s - t, -t)
    # the printed (t, -s) does not solve the (1, 0) equations; (-t, -s) does
    assert solve_case(1, 0, s, t) == (-t, -s)


def test_case_check_unit_beta():
    r = synthetic_record(1000, 2, -1, j=0)
    report = case_check(r, BetaDecomposition(UnitWord(1, 0, 0), True))
    assert report.relations_hold and report.predicts_unit_beta and report.predicted_sign == -1


def test_case_check_unsupported_j():
    with pytest.raises(UnsupportedCase):
        case_check(synthetic_record(1000, 2, -1, j=1), BetaDecomposition(UnitWord(1, 0, 0), True))


# lemma verifiers ------------------------------------------------------------------


def test_prodbymax_examples():
    assert verify_lemma("prodbymax", a=4, b=Fraction(1, 2), c=Fraction(1, 2)).status is Status.PASS
    assert verify_lemma("prodbymax", a=Fraction(1, 4), b=8, c=Fraction(1, 2)).status is Status.PASS
    assert verify_lemma("prodbymax", a=1, b=1, c=1).status is Status.PASS
    with pytest.raises(HypothesisViolated):
        verify_lemma("prodbymax", a=2, b=2, c=2)


@settings(max_examples=200)
@given(st.fractions(Fraction(1, 1000), 1000), st.fractions(Fraction(1, 1000), 1000))
def test_prodbymax_random(a, b):
    c = 1 / (a * b)
    assert verify_lemma("prodbymax", a=a, b=b, c=c).status is Status.PASS


def test_prodbymax_enclosure_inputs():
    third = RealEnclosure.from_fraction(Fraction(1, 3), 128)
    three_halves = RealEnclosure.from_fraction(Fraction(3, 2), 128)
    assert verify_lemma("prodbymax", a=third, b=RealEnclosure.exact(2), c=three_halves).status is Status.PASS
    # an equality case is out of reach for enclosures
    nine = RealEnclosure.exact(9)
    assert verify_lemma("prodbymax", a=third, b=third, c=nine).status is Status.UNDECIDED


def test_alphamax_example():
    report = verify_lemma("alphamax", n=100, s=5, t=-3, eps=Fraction(1, 10))
    assert report.status is Status.PASS


def test_alphadiff_examples():
    assert verify_lemma("alphadiff", n=1000, s=5, t=1, eps=Fraction(1, 10)).status is Status.PASS
    with pytest.raises(HypothesisViolated):
        verify_lemma("alphadiff", n=3, s=5, t=1, eps=Fraction(1, 10))
    with pytest.raises(HypothesisViolated):
        verify_lemma("alphadiff", n=1000, s=2, t=1, eps=Fraction(1, 10))


@pytest.mark.parametrize("cell", [(3, 1, 0), (3, -1, -1), (5, 1, 2)])
def test_alphasalad_on_solutions(cell):
    n, s, t = cell
    checked = 0
    for x, y in solutions(n, s, t, 40):
        if y == 0:
            continue
        try:
            report = verify_lemma("alphasalad", n=n, s=s, t=t, x=x, y=y)
        except HypothesisViolated:
            continue
        assert report.status is Status.PASS
        checked += 1
    assert checked > 0


def test_coeff_ub_reports_ratio():
    report = verify_lemma("coeff_ub_theta", n=3, s=1, t=0, x=-9, y=7)
    assert report.status is Status.PASS
    assert report.details["system_encloses_exponents"]
    assert 0 < report.details["ratio"] < 64
    tight = verify_lemma("coeff_ub_theta", n=3, s=1, t=0, x=-9, y=7, c_cu=Fraction(1, 100))
    assert tight.status is Status.FAIL


def test_unknown_lemma():
    with pytest.raises(ValueError):
        verify_lemma("nope")
