"""Classification of solutions, unit decompositions, linear forms and lemma checks.

Notation follows the usual one for twisted Thue equations: beta_i = x - alpha_i y,
j is the index of the smallest |beta_i| and k < l are the other two; u is the
index of the larger of |alpha_j|, |alpha_k| and v the larger of |alpha_j|,
|alpha_l|.  Every unit of Z[lam0] is +-lam0^a lam2^b, so logarithms of |alpha_i|
and |beta_i| are integer combinations of log lam0 and log|lam2|; those integer
coefficients are tracked exactly.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Optional, Sequence, Tuple

from .cubic_field import check_n, log_n_at, logs_at, roots_at
from .numerics import (
    DEFAULT_POLICY,
    NumericsError,
    PrecisionExhausted,
    PrecisionPolicy,
    RealEnclosure,
    Status,
    VerificationReport,
    decide,
    enc_max,
    exp_enclosure,
    log2_enclosure,
    log_enclosure,
    rational_enclosure,
)
from .order import OrderElement, UnitWord, exponent_conjugate, unit_word_to_element
from .twisted_form import alpha_elements, alpha_enclosures, alpha_exponents, evaluate_form


class AnalysisError(ValueError):
    pass


class NotASolutionError(AnalysisError):
    pass


class DecompositionError(ArithmeticError):
    """The rounded exponents do not reproduce beta_0 exactly."""


class HypothesisViolated(AnalysisError):
    pass


class UnsupportedCase(AnalysisError):
    pass


# ---------------------------------------------------------------------------
# admissibility


@dataclass(frozen=True)
class Epsilon:
    value: Fraction

    def __post_init__(self):
        object.__setattr__(self, "value", Fraction(self.value))
        if self.value <= 0:
            raise ValueError("epsilon must be positive")


def _eps(eps) -> Fraction:
    return eps.value if isinstance(eps, Epsilon) else Epsilon(Fraction(eps)).value


def separation(s: int, t: int) -> int:
    """min(|2s - t|, |2t - s|, |s + t|)."""
    return min(abs(2 * s - t), abs(2 * t - s), abs(s + t))


def check_condition(s: int, t: int, eps) -> bool:
    """Admissibility of the twist: st != 0 and min(...) > eps*tau > 2."""
    e = _eps(eps)
    tau = max(abs(s), abs(t))
    return s * t != 0 and separation(s, t) > e * tau > 2


def separation_holds(s: int, t: int, eps) -> bool:
    """The part of the admissibility condition that drives alpha separation: st != 0 and min(...) > eps*tau."""
    e = _eps(eps)
    return s * t != 0 and separation(s, t) > e * max(abs(s), abs(t))


def compute_c1(eps, n: int, tau: int, bits: int = 128) -> Optional[Fraction]:
    """A rational c1 just below eps - 3(1/n + 1/n^2)/log n, or None when infeasible.

    Feasible means c1 > 0 and c1*tau*log n >= log 2, both certified.
    """
    check_n(n)
    if tau < 1:
        raise ValueError("tau must be positive")
    e = _eps(eps)
    log_n = log_n_at(n, bits)
    correction = rational_enclosure(Fraction(3, n) + Fraction(3, n * n), bits).div(log_n, bits)
    c1_enc = rational_enclosure(e, bits) - correction
    c1 = c1_enc.lo.round(bits, up=False).to_fraction()
    if c1 <= 0:
        return None
    if not (rational_enclosure(c1 * tau, bits) * log_n).certainly_ge(log2_enclosure(bits)):
        return None
    return c1


# ---------------------------------------------------------------------------
# numerical evaluation of alphas and betas


@lru_cache(maxsize=4096)
def _beta_enclosures(n: int, s: int, t: int, x: int, y: int, bits: int):
    alphas = alpha_enclosures(n, s, t, bits)
    return tuple((x - a * y).round(bits + 16 + abs(x).bit_length() + abs(y).bit_length()) for a in alphas)


def _abs_order(values: Sequence[RealEnclosure], exact_ties: Dict[Tuple[int, int], bool]):
    """Pairwise comparison of |values|: cmp[(p, q)] in {-1, 0, 1} or None when undecided."""
    mags = [abs(v) for v in values]
    cmp = {}
    for p in range(3):
        for q in range(3):
            if p == q:
                continue
            if exact_ties.get((min(p, q), max(p, q))):
                cmp[(p, q)] = 0
            else:
                c = mags[p].compare(mags[q])
                cmp[(p, q)] = None if c == 0 else c
    return cmp


def _argmin(cmp) -> Tuple[int, bool]:
    """Smallest index that is <= all others, and whether that choice is tie-free."""
    for i in range(3):
        if all(cmp[(i, p)] in (-1, 0) for p in range(3) if p != i):
            tied = any(cmp[(i, p)] == 0 for p in range(3) if p != i)
            return i, not tied
    raise AssertionError("inconsistent comparisons")


def _descending(cmp) -> Tuple[int, int, int]:
    def rank(i):
        return sum(1 for p in range(3) if p != i and cmp[(i, p)] == -1)

    return tuple(sorted(range(3), key=lambda i: (rank(i), i)))


def _larger(cmp, p: int, q: int) -> int:
    """Index of the larger |alpha| among p, q; p wins ties."""
    return q if cmp[(p, q)] == -1 else p


@dataclass(frozen=True)
class SolutionRecord:
    x: Optional[int]
    y: Optional[int]
    n: int
    s: int
    t: int
    j: int
    k: int
    l: int
    u: int
    v: int
    alpha_order: Tuple[int, int, int]
    alpha_enclosures: Tuple[RealEnclosure, ...]
    beta_enclosures: Optional[Tuple[RealEnclosure, ...]]
    certified: bool = True
    note: str = ""
    bits: int = 0
    synthetic: bool = False

    @property
    def tau(self) -> int:
        return max(abs(self.s), abs(self.t))

    def key(self):
        return (self.n, self.s, self.t, self.y, self.x)


def _exact_beta_ties(n, s, t, x, y):
    betas = beta_elements(n, s, t, x, y)
    ties = {}
    for p, q in ((0, 1), (0, 2), (1, 2)):
        ties[(p, q)] = betas[p] == betas[q] or betas[p] == -betas[q]
    return ties


def _exact_alpha_ties(s, t):
    ties = {}
    for p, q in ((0, 1), (0, 2), (1, 2)):
        ties[(p, q)] = alpha_exponents(s, t, p) == alpha_exponents(s, t, q)
    return ties


def beta_elements(n: int, s: int, t: int, x: int, y: int) -> Tuple[OrderElement, ...]:
    return tuple(x - a * y for a in alpha_elements(n, s, t))


def classify_solution(
    x: int, y: int, n: int, s: int, t: int, policy: PrecisionPolicy = DEFAULT_POLICY
) -> SolutionRecord:
    """Certify j, (k, l), (u, v) and the |alpha| ordering for a solution of |F| = 1.

    Exact ties (found by exact algebra) fall back to the smallest index and mark
    the record uncertified; ties that survive max_bits are reported the same way.
    """
    check_n(n)
    if abs(evaluate_form(n, s, t, x, y)) != 1:
        raise NotASolutionError(f"|F({x}, {y}; {n}, {s}, {t})| != 1")
    beta_ties = _exact_beta_ties(n, s, t, x, y)
    alpha_ties = _exact_alpha_ties(s, t)
    bits = policy.start_bits
    bcmp = acmp = None
    alphas = betas = None
    for bits in policy.schedule():
        alphas = alpha_enclosures(n, s, t, bits)
        betas = _beta_enclosures(n, s, t, x, y, bits)
        bcmp = _abs_order(betas, beta_ties)
        acmp = _abs_order(alphas, alpha_ties)
        if None not in bcmp.values() and None not in acmp.values():
            break
    decided = None not in bcmp.values() and None not in acmp.values()
    if not decided:
        # fall back to midpoint ordering so the record is still deterministic
        bcmp = _midpoint_cmp(betas, bcmp)
        acmp = _midpoint_cmp(alphas, acmp)
    j, beta_strict = _argmin(bcmp)
    k, l = [i for i in range(3) if i != j]
    alpha_strict = not any(alpha_ties.values())
    note = ""
    if not decided:
        note = "precision exhausted"
    elif not beta_strict:
        note = "exact tie in |beta|"
    elif not alpha_strict:
        note = "exact tie in |alpha|"
    return SolutionRecord(
        x=x,
        y=y,
        n=n,
        s=s,
        t=t,
        j=j,
        k=k,
        l=l,
        u=_larger(acmp, j, k),
        v=_larger(acmp, j, l),
        alpha_order=_descending(acmp),
        alpha_enclosures=alphas,
        beta_enclosures=betas,
        certified=decided and beta_strict,
        note=note,
        bits=bits,
    )


def _midpoint_cmp(values, cmp):
    mids = [abs(v.mid) for v in values]
    out = {}
    for key, c in cmp.items():
        if c is None:
            p, q = key
            c = (mids[p] > mids[q]) - (mids[p] < mids[q])
        out[key] = c
    return out


def synthetic_record(
    n: int, s: int, t: int, j: int = 0, policy: PrecisionPolicy = DEFAULT_POLICY
) -> SolutionRecord:
    """A record for (n, s, t) with a prescribed j and no underlying (x, y).

    Used to exercise the case analysis for orderings of |alpha_i| that are hard
    to reach with genuine solutions.
    """
    check_n(n)
    ties = _exact_alpha_ties(s, t)
    bits = policy.start_bits
    acmp = alphas = None
    for bits in policy.schedule():
        alphas = alpha_enclosures(n, s, t, bits)
        acmp = _abs_order(alphas, ties)
        if None not in acmp.values():
            break
    decided = None not in acmp.values()
    if not decided:
        acmp = _midpoint_cmp(alphas, acmp)
    k, l = [i for i in range(3) if i != j]
    return SolutionRecord(
        x=None,
        y=None,
        n=n,
        s=s,
        t=t,
        j=j,
        k=k,
        l=l,
        u=_larger(acmp, j, k),
        v=_larger(acmp, j, l),
        alpha_order=_descending(acmp),
        alpha_enclosures=alphas,
        beta_enclosures=None,
        certified=decided,
        note="" if decided else "precision exhausted",
        bits=bits,
        synthetic=True,
    )


# ---------------------------------------------------------------------------
# unit decomposition


@dataclass(frozen=True)
class BetaDecomposition:
    word: UnitWord
    exact_verified: bool
    bits: int = 0

    @property
    def a(self) -> int:
        return self.word.a

    @property
    def b(self) -> int:
        return self.word.b

    def exponents(self, i: int = 0) -> Tuple[int, int]:
        """Exponents of the i-th conjugate in the (lam0, lam2) basis."""
        return exponent_conjugate(self.word.a, self.word.b, i)


def _unique_integer(enc: RealEnclosure) -> Optional[int]:
    lo = enc.lo.ceil()
    if lo <= enc.hi and not (lo + 1 <= enc.hi):
        return lo
    if enc.hi < lo:
        raise DecompositionError(f"exponent enclosure {enc} contains no integer")
    return None


def _solve_exponents(log_u0: RealEnclosure, log_u1: RealEnclosure, n: int, bits: int):
    """Solve log|u0| = a log lam0 + b log|lam2|, log|u1| = a log|lam1| + b log lam0."""
    l0, l1, l2 = logs_at(n, bits)
    det = l0.square() - l2 * l1
    a = (log_u0 * l0 - l2 * log_u1).div(det, bits)
    b = (l0 * log_u1 - l1 * log_u0).div(det, bits)
    return _unique_integer(a), _unique_integer(b)


def _match_word(target: OrderElement, a: int, b: int) -> UnitWord:
    w = unit_word_to_element(UnitWord(1, a, b), target.n)
    if target == w:
        return UnitWord(1, a, b)
    if target == -w:
        return UnitWord(-1, a, b)
    raise DecompositionError(f"{target} is not +-lam0^{a} lam2^{b}")


def decompose_beta(
    x: int, y: int, n: int, s: int, t: int, policy: PrecisionPolicy = DEFAULT_POLICY
) -> BetaDecomposition:
    """Write beta_0 = x - alpha_0 y as +-lam0^a lam2^b and verify it exactly."""
    check_n(n)
    if abs(evaluate_form(n, s, t, x, y)) != 1:
        raise NotASolutionError(f"|F({x}, {y}; {n}, {s}, {t})| != 1: beta_0 is not a unit")
    target = beta_elements(n, s, t, x, y)[0]
    for bits in policy.schedule():
        betas = _beta_enclosures(n, s, t, x, y, bits)
        try:
            a, b = _solve_exponents(log_enclosure(abs(betas[0]), bits), log_enclosure(abs(betas[1]), bits), n, bits)
        except NumericsError:
            continue
        if a is None or b is None:
            continue
        return BetaDecomposition(_match_word(target, a, b), True, bits)
    raise PrecisionExhausted(f"exponents of beta_0 not isolated within {policy.max_bits} bits")


def decompose_unit(u: OrderElement, policy: PrecisionPolicy = DEFAULT_POLICY) -> BetaDecomposition:
    """Decompose an arbitrary unit of Z[lam0] given by coordinates."""
    n = u.n
    check_n(n)
    need = u.max_bits() + 64
    for bits in policy.schedule():
        if bits < need and bits < policy.max_bits:
            continue
        lams = roots_at(n, bits)
        work = bits + 16
        try:
            v0 = abs(u.embed(lams[0])).round(work)
            v1 = abs(u.embed(lams[1])).round(work)
            a, b = _solve_exponents(log_enclosure(v0, bits), log_enclosure(v1, bits), n, bits)
        except NumericsError:
            continue
        if a is None or b is None:
            continue
        return BetaDecomposition(_match_word(u, a, b), True, bits)
    raise PrecisionExhausted(f"exponents of {u} not isolated within {policy.max_bits} bits")


# ---------------------------------------------------------------------------
# logarithms of alpha quotients


def lattice_value(a: int, b: int, c: int, n: int, bits: int) -> RealEnclosure:
    """Enclosure of a*log lam0 + b*log|lam2| - c*log 2."""
    l0, _, l2 = logs_at(n, bits)
    value = a * l0 + b * l2
    if c:
        value = value - c * log2_enclosure(bits)
    return value


def log_alpha_quotient(p: int, q: int, n: int, s: int, t: int, bits: int = 128):
    """Coefficients (A, B) with log|alpha_p / alpha_q| = A log lam0 + B log|lam2|, and its enclosure.

    For (p, q) = (0, 1), (0, 2), (2, 1) this gives (2s - t, -(2t - s)),
    (s - 2t, -(s + t)) and (s + t, -(t - 2s)).
    """
    if p == q or {p, q} - {0, 1, 2}:
        raise ValueError("p and q must be distinct indices in 0..2")
    ap, bp = alpha_exponents(s, t, p)
    aq, bq = alpha_exponents(s, t, q)
    A, B = ap - aq, bp - bq
    return A, B, lattice_value(A, B, 0, n, bits)


# ---------------------------------------------------------------------------
# linear forms


class LinearFormKind(str, enum.Enum):
    LAMBDA = "LAMBDA"
    LAMBDA_PRIME = "LAMBDA_PRIME"
    LAMBDA_DBLPRIME = "LAMBDA_DBLPRIME"


@dataclass(frozen=True)
class LinearFormReport:
    """A linear form in logarithms with exact lattice coefficients.

    For LAMBDA_PRIME and LAMBDA_DBLPRIME the value equals
    coeff_lam0*log lam0 + coeff_lam2*log|lam2| - coeff_log2*log 2 exactly.  For
    LAMBDA only the beta part is in the lattice; the enclosure also contains the
    term log|(alpha_j - alpha_k)/(alpha_j - alpha_l)|.
    """

    kind: LinearFormKind
    coeff_lam0: int
    coeff_lam2: int
    coeff_log2: int
    enclosure: RealEnclosure
    upper_bound: Optional[RealEnclosure]
    nonzero_certified: bool
    status: Status = Status.PASS
    branch: str = ""
    bound_applies: Optional[bool] = None
    bits: int = 0


def _log_abs(v: RealEnclosure, bits: int) -> RealEnclosure:
    return log_enclosure(abs(v), bits)


def _lambda_parts(record: SolutionRecord, bits: int):
    n, s, t, x, y = record.n, record.s, record.t, record.x, record.y
    alphas = alpha_enclosures(n, s, t, bits)
    betas = _beta_enclosures(n, s, t, x, y, bits)
    j, k, l = record.j, record.k, record.l
    work = bits + 16
    djk = (alphas[j] - alphas[k]).round(work)
    djl = (alphas[j] - alphas[l]).round(work)
    dkl = (alphas[k] - alphas[l]).round(work)
    log_beta = [_log_abs(b, bits) for b in betas]
    log_alpha = [_log_abs(a, bits) for a in alphas]
    lam = log_beta[l] - log_beta[k] + _log_abs(djk, bits) - _log_abs(djl, bits)
    small = abs(betas[j]).div(abs(betas[k]), work) * abs(dkl).div(abs(djl), work)
    return {
        "alphas": alphas,
        "betas": betas,
        "log_beta": log_beta,
        "log_alpha": log_alpha,
        "djk": djk,
        "djl": djl,
        "lambda": lam,
        "small": small,
    }


def linear_form(
    record: SolutionRecord,
    kind,
    policy: PrecisionPolicy = DEFAULT_POLICY,
    decomp: Optional[BetaDecomposition] = None,
    eps=None,
) -> LinearFormReport:
    """Evaluate Lambda, Lambda' or Lambda'' for a classified solution."""
    kind = LinearFormKind(kind)
    if record.synthetic or record.x is None:
        raise AnalysisError("linear forms need a record with an actual solution (x, y)")
    if decomp is None:
        decomp = decompose_beta(record.x, record.y, record.n, record.s, record.t, policy)
    n, s, t = record.n, record.s, record.t
    k, l, u, v = record.k, record.l, record.u, record.v
    eb = [decomp.exponents(i) for i in range(3)]
    ea = [alpha_exponents(s, t, i) for i in range(3)]
    beta_A, beta_B = eb[l][0] - eb[k][0], eb[l][1] - eb[k][1]
    prime_A = beta_A + ea[u][0] - ea[v][0]
    prime_B = beta_B + ea[u][1] - ea[v][1]

    last = None
    for bits in policy.schedule():
        try:
            parts = _lambda_parts(record, bits)
        except NumericsError:
            continue
        lam_bound = 2 * parts["small"]
        applies = _tri(parts["small"].certainly_le(Fraction(1, 2)), parts["small"].certainly_gt(Fraction(1, 2)))
        if kind is LinearFormKind.LAMBDA:
            last = LinearFormReport(
                kind, beta_A, beta_B, 0, parts["lambda"], lam_bound,
                parts["lambda"].excludes_zero(), branch="lambda", bound_applies=applies, bits=bits,
            )
            if last.nonzero_certified:
                return last
            continue
        la = parts["log_alpha"]
        prime = parts["log_beta"][l] - parts["log_beta"][k] + la[u] - la[v]
        _cross_check(prime, prime_A, prime_B, 0, n, bits)
        prime_bound = (
            lam_bound
            + abs(_log_abs(parts["djk"], bits) - la[u])
            + abs(_log_abs(parts["djl"], bits) - la[v])
        )
        if kind is LinearFormKind.LAMBDA_PRIME or (prime_A, prime_B) != (0, 0):
            # Lambda' is nonzero exactly when its lattice coefficients are
            certified = prime.excludes_zero() or (prime_A, prime_B) != (0, 0)
            branch = "lambda_prime" if kind is LinearFormKind.LAMBDA_PRIME else "lambda_prime_nonzero"
            return LinearFormReport(
                kind, prime_A, prime_B, 0, prime, prime_bound, certified,
                branch=branch, bound_applies=applies, bits=bits,
            )
        betas = beta_elements(n, s, t, record.x, record.y)
        return _dblprime_branch(record, eb, betas, parts["log_beta"], bits, eps)
    if last is not None:
        return LinearFormReport(**{**last.__dict__, "status": Status.UNDECIDED})
    raise PrecisionExhausted("linear form enclosures could not be formed within max_bits")


def _tri(yes: bool, no: bool) -> Optional[bool]:
    if yes:
        return True
    if no:
        return False
    return None


def _cross_check(direct: RealEnclosure, A: int, B: int, C: int, n: int, bits: int) -> None:
    lattice = lattice_value(A, B, C, n, bits)
    if not direct.overlaps(lattice):
        raise AssertionError(f"lattice coefficients ({A}, {B}, {C}) disagree with direct evaluation")


def _dblprime_branch(record, eb, beta_exact, log_beta, bits, eps) -> LinearFormReport:
    """Lambda' vanishes: pick the replacement form by the ordering of |alpha|.

    ``eb`` holds the (lam0, lam2) exponents of beta_0..beta_2, ``beta_exact``
    the betas themselves in Z[lam0] and ``log_beta`` enclosures of log|beta_i|.
    """
    n, s, t = record.n, record.s, record.t
    j, k, l, u, v = record.j, record.k, record.l, record.u, record.v
    ea = [alpha_exponents(s, t, i) for i in range(3)]
    la = [_log_abs(a, bits) for a in alpha_enclosures(n, s, t, bits)]
    lb = log_beta
    log2 = log2_enclosure(bits)
    if u == j and v == j:
        A, B, C = ea[k][0] - ea[j][0], ea[k][1] - ea[j][1], 1
        value = la[k] - la[j] - log2
        branch = "alpha_j_maximal"
    else:
        alphas = alpha_elements(n, s, t)
        if beta_exact[l] * alphas[u] == beta_exact[k] * alphas[v]:
            A, B, C = eb[l][0] - eb[k][0], eb[l][1] - eb[k][1], 0
            value = lb[l] - lb[k]
            branch = "no_sign_flip"
        else:
            A = eb[k][0] - eb[l][0] + ea[j][0] - ea[k][0]
            B = eb[k][1] - eb[l][1] + ea[j][1] - ea[k][1]
            C = 1
            value = lb[k] - lb[l] + la[j] - la[k] - log2
            branch = "sign_flip"
    _cross_check(value, A, B, C, n, bits)
    # 2 is not a unit (norm 8) and log lam0, log|lam2| are independent
    certified = value.excludes_zero() or C != 0 or (A, B) != (0, 0)
    bound = None
    if eps is not None:
        c1 = compute_c1(eps, n, record.tau, bits)
        if c1 is not None:
            bound = exp_enclosure(-(rational_enclosure(c1 * record.tau / 2, bits) * log_n_at(n, bits)), bits)
    return LinearFormReport(
        LinearFormKind.LAMBDA_DBLPRIME, A, B, C, value, bound, certified, branch=branch, bits=bits
    )


def unit_linear_form(
    record: SolutionRecord,
    beta_words: Sequence[UnitWord],
    policy: PrecisionPolicy = DEFAULT_POLICY,
    eps=None,
) -> LinearFormReport:
    """Lambda'' for prescribed units beta_0..beta_2, typically on a synthetic record.

    Lets the branch selection be exercised on inputs (such as beta_l = -beta_k)
    that are not of the form x - alpha_i y.
    """
    if len(beta_words) != 3:
        raise ValueError("need three unit words")
    n, s, t = record.n, record.s, record.t
    k, l, u, v = record.k, record.l, record.u, record.v
    eb = [(w.a, w.b) for w in beta_words]
    exact = [unit_word_to_element(w, n) for w in beta_words]
    ea = [alpha_exponents(s, t, i) for i in range(3)]
    A = eb[l][0] - eb[k][0] + ea[u][0] - ea[v][0]
    B = eb[l][1] - eb[k][1] + ea[u][1] - ea[v][1]
    bits = policy.start_bits
    log_beta = [lattice_value(a, b, 0, n, bits) for a, b in eb]
    if (A, B) != (0, 0):
        value = lattice_value(A, B, 0, n, bits)
        return LinearFormReport(
            LinearFormKind.LAMBDA_DBLPRIME, A, B, 0, value, None, True,
            branch="lambda_prime_nonzero", bits=bits,
        )
    return _dblprime_branch(record, eb, exact, log_beta, bits, eps)


# ---------------------------------------------------------------------------
# approximation of log|y|


@dataclass(frozen=True)
class LogYApproximation:
    """log|beta_k| - log|alpha_j - alpha_k| and a certified bound on its distance to log|y|."""

    enclosure: RealEnclosure
    delta_bound: RealEnclosure
    bits: int
    contains_log_y: Optional[bool] = None


def approx_log_y(record: SolutionRecord, policy: PrecisionPolicy = DEFAULT_POLICY) -> LogYApproximation:
    """log|beta_k| - log|alpha_j - alpha_k|, equal to log|y| + delta.

    delta = log|1 + w| with w = beta_j / (y (alpha_j - alpha_k)).  For |w| < 1,
    |delta| <= -log(1 - |w|) < |w| / (1 - |w|); the strict second bound is the
    one reported, so that |approx - log|y|| <= delta can actually be certified
    (the first is attained when w < 0).  Precision is raised until that check
    is decided.
    """
    if record.y is None or record.y == 0:
        raise HypothesisViolated("approx_log_y needs |y| >= 1")
    last = None
    for bits in policy.schedule():
        try:
            parts = _lambda_parts(record, bits)
            work = bits + 16
            value = parts["log_beta"][record.k] - _log_abs(parts["djk"], bits)
            w = abs(parts["betas"][record.j]).div(abs(record.y) * abs(parts["djk"]), work)
            if not w.certainly_lt(1):
                continue
            delta = w.div(1 - w, work)
        except NumericsError:
            continue
        diff = abs(value - log_enclosure(RealEnclosure.exact(abs(record.y)), bits))
        if diff.certainly_le(delta):
            return LogYApproximation(value, delta, bits, True)
        if diff.certainly_gt(delta):
            return LogYApproximation(value, delta, bits, False)
        last = LogYApproximation(value, delta, bits, None)
    if last is None:
        raise PrecisionExhausted("log|y| approximation not certified within max_bits")
    return last


# ---------------------------------------------------------------------------
# case analysis for j = 0


# (a, b) as printed for each (u, v); the (1, 0) entry does not satisfy its own
# coefficient equations, see CASE_RELATIONS
TABULATED_CASES = {
    (0, 0): lambda s, t: (0, 0),
    (0, 2): lambda s, t: (s, s - t),
    (1, 0): lambda s, t: (t, -s),
    (1, 2): lambda s, t: (s - t, -t),
}


def case_relations(u: int, v: int, a: int, b: int, s: int, t: int) -> Tuple[int, int]:
    """Lattice coefficients of Lambda' = log|beta_2/beta_1| + log|alpha_u/alpha_v| for j = 0."""
    A = a - 2 * b
    B = 2 * a - b
    au, bu = alpha_exponents(s, t, u)
    av, bv = alpha_exponents(s, t, v)
    return A + au - av, B + bu - bv


def solve_case(u: int, v: int, s: int, t: int) -> Tuple[int, int]:
    """The unique (a, b) making both coefficients of ``case_relations`` vanish."""
    au, bu = alpha_exponents(s, t, u)
    av, bv = alpha_exponents(s, t, v)
    p, q = av - au, bv - bu  # a - 2b = p, 2a - b = q
    a3, b3 = 2 * q - p, q - 2 * p
    if a3 % 3 or b3 % 3:
        raise UnsupportedCase("no integer solution")
    return a3 // 3, b3 // 3


@dataclass(frozen=True)
class CaseReport:
    u: int
    v: int
    a: int
    b: int
    relations: Tuple[int, int]
    relations_hold: bool
    expected: Tuple[int, int]
    tabulated: Tuple[int, int]
    matches_table: bool
    predicted_log_y: Tuple[int, int]
    predicted_log_y_enclosure: RealEnclosure
    predicted_sign: Optional[int]
    predicts_unit_beta: bool
    bits: int


def case_check(
    record: SolutionRecord, decomp: BetaDecomposition, policy: PrecisionPolicy = DEFAULT_POLICY
) -> CaseReport:
    """Check the exponent relations forced by Lambda' = 0 for j = 0, (k, l) = (1, 2).

    The predicted log|y| is log|beta_2| - log|alpha_v|, the approximation used
    once |alpha_0 - alpha_2| is replaced by its dominant term.
    """
    if record.j != 0:
        raise UnsupportedCase(f"case analysis is only tabulated for j = 0, got j = {record.j}")
    if not decomp.exact_verified:
        raise HypothesisViolated("decomposition must be exactly verified")
    u, v, s, t = record.u, record.v, record.s, record.t
    if (u, v) not in TABULATED_CASES:
        raise UnsupportedCase(f"(u, v) = ({u}, {v}) is not one of the j = 0 cases")
    a, b = decomp.a, decomp.b
    rel = case_relations(u, v, a, b, s, t)
    expected = solve_case(u, v, s, t)
    table = TABULATED_CASES[(u, v)](s, t)
    b2 = exponent_conjugate(a, b, 2)
    av = alpha_exponents(s, t, v)
    pred = (b2[0] - av[0], b2[1] - av[1])
    sign = None
    enclosure = None
    bits = policy.start_bits
    for bits in policy.schedule():
        enclosure = lattice_value(pred[0], pred[1], 0, record.n, bits)
        sign = enclosure.sign()
        if sign is not None:
            break
    return CaseReport(
        u=u,
        v=v,
        a=a,
        b=b,
        relations=rel,
        relations_hold=rel == (0, 0),
        expected=expected,
        tabulated=table,
        matches_table=(a, b) == table,
        predicted_log_y=pred,
        predicted_log_y_enclosure=enclosure,
        predicted_sign=sign,
        predicts_unit_beta=(a, b) == (0, 0),
        bits=bits,
    )


# ---------------------------------------------------------------------------
# lemma verifiers


def _report(name: str, check, policy: PrecisionPolicy, details: Dict) -> VerificationReport:
    status, bits = decide(check, policy)
    return VerificationReport(name, status, bits, details)


def verify_prodbymax(a, b, c, policy: PrecisionPolicy = DEFAULT_POLICY) -> VerificationReport:
    """max(a, b) * max(a, c) >= sqrt(max(a, b, c)) for positive a, b, c with abc = 1.

    Inputs may be enclosures; the product must contain 1.
    """
    if all(isinstance(z, (int, Fraction)) for z in (a, b, c)):
        # exact inputs: decide exactly, equality cases included
        a, b, c = (Fraction(z) for z in (a, b, c))
        if min(a, b, c) <= 0:
            raise HypothesisViolated("prodbymax needs positive inputs")
        if a * b * c != 1:
            raise HypothesisViolated("prodbymax needs abc = 1")
        holds = (max(a, b) * max(a, c)) ** 2 >= max(a, b, c)
        return VerificationReport("prodbymax", Status.PASS if holds else Status.FAIL, 0, {"exact": True})
    encs = [RealEnclosure.coerce(z, policy.start_bits) for z in (a, b, c)]
    if not all(e.lo.man > 0 for e in encs):
        raise HypothesisViolated("prodbymax needs positive inputs")
    if not (encs[0] * encs[1] * encs[2]).contains(1):
        raise HypothesisViolated("prodbymax needs abc = 1")
    ea, eb, ec = encs

    def check(bits):
        lhs = (enc_max(ea, eb) * enc_max(ea, ec)).square()
        rhs = enc_max(ea, eb, ec)
        if lhs.certainly_ge(rhs):
            return True
        if lhs.certainly_lt(rhs):
            return False
        return None

    return _report("prodbymax", check, policy, {})


def _require_c1(eps, n, tau):
    c1 = compute_c1(eps, n, tau)
    if c1 is None:
        raise HypothesisViolated(f"c1 infeasible for eps={_eps(eps)}, n={n}, tau={tau}")
    return c1


def verify_alphadiff(n: int, s: int, t: int, eps, policy: PrecisionPolicy = DEFAULT_POLICY) -> VerificationReport:
    """|alpha_p/alpha_q| < n^(-c1 tau) <= 1/2 and |alpha_p - alpha_q| > (1 - n^(-c1 tau))|alpha_q|."""
    check_n(n)
    if not separation_holds(s, t, eps):
        raise HypothesisViolated(f"(s, t) = ({s}, {t}) violates min(...) > eps*tau")
    tau = max(abs(s), abs(t))
    c1 = _require_c1(eps, n, tau)

    def check(bits):
        alphas = alpha_enclosures(n, s, t, bits)
        rho = exp_enclosure(-(rational_enclosure(c1 * tau, bits) * log_n_at(n, bits)), bits)
        if rho.certainly_gt(Fraction(1, 2)):
            return False
        outcome = True if rho.certainly_le(Fraction(1, 2)) else None
        work = bits + 16
        for p in range(3):
            for q in range(3):
                if p == q:
                    continue
                c = abs(alphas[q]).compare(abs(alphas[p]))
                if c is None:
                    outcome = None
                    continue
                if c != 1:
                    continue
                ratio = abs(alphas[p]).div(abs(alphas[q]), work)
                diff = abs(alphas[p] - alphas[q])
                floor_ = (1 - rho) * abs(alphas[q])
                if ratio.certainly_ge(rho) or diff.certainly_le(floor_):
                    return False
                if not (ratio.certainly_lt(rho) and diff.certainly_gt(floor_)):
                    outcome = None
        return outcome

    return _report("alphadiff", check, policy, {"n": n, "s": s, "t": t, "c1": str(c1)})


def verify_alphamax(n: int, s: int, t: int, eps, policy: PrecisionPolicy = DEFAULT_POLICY) -> VerificationReport:
    """n^(3 tau) >= max |alpha_i| >= n^(c1 tau), checked on logarithms."""
    check_n(n)
    tau = max(abs(s), abs(t))
    if tau == 0:
        raise HypothesisViolated("alphamax needs (s, t) != (0, 0)")
    c1 = _require_c1(eps, n, tau)
    extra = {}

    def check(bits):
        logs = [_log_abs(a, bits) for a in alpha_enclosures(n, s, t, bits)]
        top = enc_max(*logs)
        log_n = log_n_at(n, bits)
        upper = 3 * tau * log_n
        lower = rational_enclosure(c1 * tau, bits) * log_n
        extra["at_least_0.19"] = top.certainly_ge(rational_enclosure(Fraction(19, 100) * tau, bits) * log_n)
        if top.certainly_gt(upper) or top.certainly_lt(lower):
            return False
        if top.certainly_le(upper) and top.certainly_ge(lower):
            return True
        return None

    report = _report("alphamax", check, policy, {"n": n, "s": s, "t": t, "c1": str(c1)})
    report.details.update(extra)
    return report


def alphasalad_hypotheses(record: SolutionRecord, bits: int) -> Optional[bool]:
    """|y| >= 1 and either |alpha_j| is maximal, or x != 0 and |beta_j| < 1/2."""
    if record.synthetic or record.y is None or record.y == 0 or not record.certified:
        return False
    if record.alpha_order[0] == record.j:
        return True
    if record.x == 0:
        return False
    beta_j = abs(_beta_enclosures(record.n, record.s, record.t, record.x, record.y, bits)[record.j])
    if beta_j.certainly_lt(Fraction(1, 2)):
        return True
    if beta_j.certainly_ge(Fraction(1, 2)):
        return False
    return None


def verify_alphasalad(record: SolutionRecord, policy: PrecisionPolicy = DEFAULT_POLICY) -> VerificationReport:
    """max(|a_k|, |a_l|) / (max(|a_j|, |a_k|) max(|a_j|, |a_l|)) < 2|y|."""
    hyp = None
    for bits in policy.schedule():
        hyp = alphasalad_hypotheses(record, bits)
        if hyp is not None:
            break
    if not hyp:
        raise HypothesisViolated("alphasalad hypotheses do not hold for this record")
    j, k, l = record.j, record.k, record.l
    n, s, t = record.n, record.s, record.t

    def check(bits):
        m = [abs(a) for a in alpha_enclosures(n, s, t, bits)]
        lhs = enc_max(m[k], m[l]).div(enc_max(m[j], m[k]) * enc_max(m[j], m[l]), bits + 16)
        rhs = 2 * abs(record.y)
        if lhs.certainly_lt(rhs):
            return True
        if lhs.certainly_ge(rhs):
            return False
        return None

    return _report("alphasalad", check, policy, {"n": n, "s": s, "t": t, "x": record.x, "y": record.y})


def _decomposition_matrix_rows(bits: int, n: int, rows: Sequence[int]):
    """Rows (log|sigma^i lam0|, log|sigma^i lam2|) of the system for beta_k, beta_l."""
    logs = logs_at(n, bits)
    # sigma^i(lam0) = lam_i and sigma^i(lam2) = lam_{i+2}
    return [(logs[i], logs[(i + 2) % 3]) for i in rows]


def verify_coeff_ub(
    x: int, y: int, n: int, s: int, t: int, c_cu=Fraction(64), policy: PrecisionPolicy = DEFAULT_POLICY
) -> VerificationReport:
    """max(|a|, |b|) <= C_cu (log|y| / log n + tau), with the observed ratio.

    Also solves the j-dependent 2x2 system in log|beta_k|, log|beta_l| and checks
    that its solution encloses the exact exponents.
    """
    check_n(n)
    if y == 0:
        raise HypothesisViolated("coeff_ub needs |y| >= 1")
    record = classify_solution(x, y, n, s, t, policy)
    decomp = decompose_beta(x, y, n, s, t, policy)
    a, b = decomp.a, decomp.b
    tau = record.tau
    c_cu = Fraction(c_cu)
    extra: Dict = {"a": a, "b": b, "j": record.j}

    def check(bits):
        log_n = log_n_at(n, bits)
        scale = log_enclosure(RealEnclosure.exact(abs(y)), bits).div(log_n, bits) + tau
        top = max(abs(a), abs(b))
        bound = rational_enclosure(c_cu, bits) * scale
        if scale.excludes_zero():
            extra["ratio"] = float(RealEnclosure.exact(top).div(scale, bits).mid)
        # fidelity: the j-dependent system reproduces (a, b)
        try:
            betas = _beta_enclosures(n, s, t, x, y, bits)
            (m00, m01), (m10, m11) = _decomposition_matrix_rows(bits, n, (record.k, record.l))
            rk, rl = _log_abs(betas[record.k], bits), _log_abs(betas[record.l], bits)
            det = m00 * m11 - m01 * m10
            sa = (rk * m11 - m01 * rl).div(det, bits)
            sb = (m00 * rl - m10 * rk).div(det, bits)
            extra["system_encloses_exponents"] = sa.contains(a) and sb.contains(b)
        except NumericsError:
            return None
        if bound.certainly_ge(top):
            return True
        if bound.certainly_lt(top):
            return False
        return None

    report = _report("coeff_ub_theta", check, policy, {"n": n, "s": s, "t": t, "x": x, "y": y})
    report.details.update(extra)
    return report


LEMMAS = ("alphadiff", "prodbymax", "alphamax", "alphasalad", "coeff_ub_theta")


def verify_lemma(name: str, policy: PrecisionPolicy = DEFAULT_POLICY, **params) -> VerificationReport:
    """Dispatch to the named lemma verifier."""
    if name == "alphadiff":
        return verify_alphadiff(params["n"], params["s"], params["t"], params["eps"], policy)
    if name == "prodbymax":
        return verify_prodbymax(params["a"], params["b"], params["c"], policy)
    if name == "alphamax":
        return verify_alphamax(params["n"], params["s"], params["t"], params["eps"], policy)
    if name == "alphasalad":
        record = params.get("record")
        if record is None:
            record = classify_solution(params["x"], params["y"], params["n"], params["s"], params["t"], policy)
        return verify_alphasalad(record, policy)
    if name == "coeff_ub_theta":
        return verify_coeff_ub(
            params["x"], params["y"], params["n"], params["s"], params["t"],
            params.get("c_cu", Fraction(64)), policy,
        )
    raise ValueError(f"unknown lemma {name!r}; expected one of {', '.join(LEMMAS)}")
