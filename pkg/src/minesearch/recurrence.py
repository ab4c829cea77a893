"""Exact verification of the sum-sequence recurrence's solution structure.

The third-order recurrence

    s_n = s_{n-1} + 2/(n-2) * s_{n-3} + 2

has the quadratic solution family S(n) = a*n^2 + (7a*-2)n + (6a*-2).  Its
homogenised companion (clear denominators, shift, subtract) is

    (n+1)(n+2) s_{n+4} - 2(n+1)(n+2) s_{n+3} + (n+1)(n+2) s_{n+2}
        - 2(n+1) s_{n+1} + 2(n+2) s_n = 0,

an order-4 recurrence whose polynomial solutions span {n^2+7n+6, n+1}
(the latter is spurious: homogenisation adds it).  This module reruns the
hypergeometric-solution search for that recurrence over the six relevant
(A, B) factor choices and confirms that nothing beyond the polynomial
span is hypergeometric; the remaining two solutions decay and have no
rational consecutive-term ratio.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product


@dataclass(frozen=True)
class RationalPolynomial:
    """Dense polynomial over Q; coefficients ascending, trailing zeros trimmed."""

    coeffs: tuple[Fraction, ...]

    def __init__(self, coeffs):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1  # zero polynomial -> -1

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, i: int) -> Fraction:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def leading(self) -> Fraction:
        if self.is_zero():
            return Fraction(0)
        return self.coeffs[-1]

    def __add__(self, other: "RationalPolynomial") -> "RationalPolynomial":
        m = max(len(self.coeffs), len(other.coeffs))
        return RationalPolynomial(
            [self.coeff(i) + other.coeff(i) for i in range(m)]
        )

    def __sub__(self, other: "RationalPolynomial") -> "RationalPolynomial":
        m = max(len(self.coeffs), len(other.coeffs))
        return RationalPolynomial(
            [self.coeff(i) - other.coeff(i) for i in range(m)]
        )

    def __neg__(self) -> "RationalPolynomial":
        return RationalPolynomial([-c for c in self.coeffs])

    def __mul__(self, other) -> "RationalPolynomial":
        if isinstance(other, (int, Fraction)):
            return RationalPolynomial([c * other for c in self.coeffs])
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs))
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return RationalPolynomial(out)

    __rmul__ = __mul__

    def shift(self, j: int) -> "RationalPolynomial":
        """Compose with n -> n + j."""
        out = RationalPolynomial([0])
        x_plus = RationalPolynomial([j, 1])
        power = RationalPolynomial([1])
        for c in self.coeffs:
            out = out + power * c
            power = power * x_plus
        return out

    def __call__(self, x: Fraction) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def monic(self) -> "RationalPolynomial":
        if self.is_zero():
            return self
        lead = self.coeffs[-1]
        return RationalPolynomial([c / lead for c in self.coeffs])

    def divmod(self, other: "RationalPolynomial"):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        quot = [Fraction(0)] * max(0, len(rem) - len(other.coeffs) + 1)
        d = other.degree
        lead = other.coeffs[-1]
        while len(rem) - 1 >= d and any(c != 0 for c in rem):
            while rem and rem[-1] == 0:
                rem.pop()
            if len(rem) - 1 < d:
                break
            k = len(rem) - 1 - d
            f = rem[-1] / lead
            quot[k] = f
            for i, c in enumerate(other.coeffs):
                rem[k + i] -= f * c
            rem.pop()
        return RationalPolynomial(quot), RationalPolynomial(rem)

    def divexact(self, other: "RationalPolynomial") -> "RationalPolynomial":
        q, r = self.divmod(other)
        if not r.is_zero():
            raise ValueError("not an exact polynomial division")
        return q

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeff(i)
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                var = "n" if i == 1 else f"n^{i}"
                if c == 1:
                    terms.append(var)
                elif c == -1:
                    terms.append(f"-{var}")
                else:
                    terms.append(f"{c}*{var}")
        out = terms[0]
        for t in terms[1:]:
            out += " - " + t[1:] if t.startswith("-") else " + " + t
        return out


def poly(*coeffs) -> RationalPolynomial:
    """Ascending-coefficient constructor: poly(6, 7, 1) = n^2 + 7n + 6."""
    return RationalPolynomial(coeffs)


def poly_gcd(a: RationalPolynomial, b: RationalPolynomial) -> RationalPolynomial:
    while not b.is_zero():
        a, b = b, a.divmod(b)[1]
    return a.monic() if not a.is_zero() else a


def rational_roots(p: RationalPolynomial) -> list[Fraction]:
    """All rational roots (with multiplicity collapsed), including 0."""
    if p.is_zero():
        raise ValueError("zero polynomial has every root")
    roots = []
    coeffs = list(p.coeffs)
    low = 0
    while coeffs[low] == 0:
        low += 1
    if low > 0:
        roots.append(Fraction(0))
        coeffs = coeffs[low:]
    if len(coeffs) == 1:
        return roots
    # clear denominators; candidates p/q with p | constant, q | leading
    den = 1
    for c in coeffs:
        den = den * c.denominator // _gcd(den, c.denominator)
    ints = [int(c * den) for c in coeffs]

    def divisors(x: int) -> list[int]:
        x = abs(x)
        out = []
        i = 1
        while i * i <= x:
            if x % i == 0:
                out.append(i)
                out.append(x // i)
            i += 1
        return sorted(set(out))

    reduced = RationalPolynomial(coeffs)
    for num in divisors(ints[0]):
        for d in divisors(ints[-1]):
            for cand in (Fraction(num, d), Fraction(-num, d)):
                if cand not in roots and reduced(cand) == 0:
                    roots.append(cand)
    return sorted(roots)


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


# ---------------------------------------------------------------------------
# the homogenised recurrence


def recurrence_coefficients() -> list[RationalPolynomial]:
    """p_0..p_4 of the cleared-denominator order-4 recurrence.

    The trailing coefficient is (n+1)(n+2): multiplying the shifted,
    subtracted recurrence by (n+1)(n+2) forces it, and it is the choice
    consistent with the factor set {n-1, n-2, 1} for p_4(n-3).
    """
    n1n2 = poly(2, 3, 1)  # (n+1)(n+2)
    return [
        poly(4, 2),          # 2(n+2)
        poly(-2, -2),        # -2(n+1)
        n1n2,
        -2 * n1n2,
        n1n2,
    ]


P4_ERRATUM_NOTE = (
    "erratum: the trailing recurrence coefficient is (n+1)(n+2); the "
    "variant (n+1)(n-2) contradicts both the cleared-denominator "
    "derivation and the factor set {n-1, n-2, 1} quoted for its shift."
)

ALPHA_NOTE = (
    "note: in the two degenerate cases (A = 1, B != 1) the raw leading "
    "coefficient is alpha_0 = 2, sometimes normalised to 1; only the zero "
    "pattern matters, and the root equation is a nonzero constant either way."
)


def quadratic_family_residual(a_star: Fraction, n: int) -> Fraction:
    """S(n) - [S(n-1) + 2/(n-2) S(n-3) + 2] for the quadratic family; 0."""
    if n < 4:
        raise ValueError("n >= 4")
    a = Fraction(a_star)

    def S(x: int) -> Fraction:
        return a * x * x + (7 * a - 2) * x + (6 * a - 2)

    return S(n) - (S(n - 1) + Fraction(2, n - 2) * S(n - 3) + 2)


def auxiliary_residual(s, n: int) -> Fraction:
    """Residual of the homogenised recurrence at n; s maps index -> value."""
    get = s if callable(s) else s.__getitem__
    return (
        get(n + 4)
        - 2 * get(n + 3)
        + get(n + 2)
        - Fraction(2, n + 2) * get(n + 1)
        + Fraction(2, n + 1) * get(n)
    )


# ---------------------------------------------------------------------------
# polynomial solutions (the "compare coefficients" engine)


def _apply_operator(ops: list[RationalPolynomial], C: RationalPolynomial) -> RationalPolynomial:
    acc = RationalPolynomial([])
    for i, op in enumerate(ops):
        acc = acc + op * C.shift(i)
    return acc


def _nullspace_basis(rows: list[list[Fraction]], ncols: int) -> list[list[Fraction]]:
    """Exact nullspace of the matrix given as rows over Q."""
    mat = [row[:] for row in rows]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(mat)) if mat[i][c] != 0), None)
        if pr is None:
            continue
        mat[r], mat[pr] = mat[pr], mat[r]
        inv = mat[r][c]
        mat[r] = [x / inv for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c] != 0:
                f = mat[i][c]
                mat[i] = [x - f * y for x, y in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [Fraction(0)] * ncols
        vec[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            vec[pc] = -mat[i][fc]
        basis.append(vec)
    return basis


def _poly_solutions_upto(ops: list[RationalPolynomial], max_degree: int) -> list[RationalPolynomial]:
    """Basis of polynomial solutions of sum_i ops[i](n) C(n+i) = 0 with
    deg C <= max_degree, by exact linear solve on coefficients."""
    ncols = max_degree + 1
    # row space: one equation per output coefficient
    out_len = max(op.degree for op in ops) + max_degree + 1
    rows = [[Fraction(0)] * ncols for _ in range(out_len)]
    for j in range(ncols):
        mono = RationalPolynomial([Fraction(0)] * j + [Fraction(1)])
        img = _apply_operator(ops, mono)
        for d in range(out_len):
            rows[d][j] = img.coeff(d)
    return [RationalPolynomial(vec) for vec in _nullspace_basis(rows, ncols)]


def poly_solutions(max_degree: int) -> list[RationalPolynomial]:
    """Polynomial solutions of the homogenised recurrence up to max_degree."""
    if max_degree > 6:
        raise ValueError("max_degree <= 6")
    return _poly_solutions_upto(recurrence_coefficients(), max_degree)


def span_matches(
    basis: list[RationalPolynomial], reference: list[RationalPolynomial]
) -> bool:
    """True iff both polynomial lists span the same Q-vector space."""
    width = max([v.degree for v in basis + reference], default=-1) + 1

    def rref(vs: list[RationalPolynomial]):
        mat = [[v.coeff(i) for i in range(width)] for v in vs]
        r = 0
        for c in range(width):
            pr = next((i for i in range(r, len(mat)) if mat[i][c] != 0), None)
            if pr is None:
                continue
            mat[r], mat[pr] = mat[pr], mat[r]
            inv = mat[r][c]
            mat[r] = [x / inv for x in mat[r]]
            for i in range(len(mat)):
                if i != r and mat[i][c] != 0:
                    f = mat[i][c]
                    mat[i] = [x - f * y for x, y in zip(mat[i], mat[r])]
            r += 1
        return [tuple(row) for row in mat if any(x != 0 for x in row)]

    return rref(basis) == rref(reference)


# ---------------------------------------------------------------------------
# case pipeline


@dataclass(frozen=True)
class CaseResult:
    A_choice: RationalPolynomial
    B_choice: RationalPolynomial
    P: tuple[RationalPolynomial, ...]
    m: int
    alphas: tuple[Fraction, ...]
    z_roots: tuple[Fraction, ...]
    b_schedule: tuple[tuple[Fraction, ...], ...]  # (b^(0), b^(1), ..., last nonzero)
    n_polynomial: RationalPolynomial | None
    degree_candidates: tuple[int, ...]
    poly_solutions: tuple[RationalPolynomial, ...]


_A_CHOICES = (poly(2, 1), poly(1))            # n+2, 1
_B_CHOICES = (poly(-1, 1), poly(-2, 1), poly(1))  # n-1, n-2, 1


def hyper_case(A: RationalPolynomial, B: RationalPolynomial) -> CaseResult:
    """Run one (A, B) factor case of the hypergeometric-solution search.

    P_i(n) = p_i(n) * prod_{j<i} A(n+j) * prod_{j>=i} B(n+j); the leading
    coefficients alpha_i (at the max degree m) give the root equation
    sum alpha_i Z^i = 0.  For each nonzero rational root the common factor
    is stripped and the coefficient-comparison schedule is run: the first
    level s with a nonzero vector (b_0..b_s) yields the degree equation
    sum_j C(N, j) b_j = 0, whose nonnegative integer roots bound the
    degree of any polynomial part.  0^0 counts as 1 in the level sums.
    """
    if A not in _A_CHOICES or B not in _B_CHOICES:
        raise ValueError("A must be n+2 or 1; B must be n-1, n-2 or 1")
    ops = recurrence_coefficients()
    d = len(ops) - 1
    P = []
    for i, op in enumerate(ops):
        e = op
        for j in range(0, i):
            e = e * A.shift(j)
        for j in range(i, d):
            e = e * B.shift(j)
        P.append(e)
    m = max(e.degree for e in P)
    alphas = tuple(e.coeff(m) for e in P)
    z_poly = RationalPolynomial(alphas)
    z_roots = tuple(rational_roots(z_poly)) if not z_poly.is_zero() else ()

    b_schedule: list[tuple[Fraction, ...]] = []
    n_polynomial = None
    degree_candidates: tuple[int, ...] = ()
    solutions: list[RationalPolynomial] = []
    for z in z_roots:
        if z == 0:
            continue
        scaled = [op * (Fraction(z) ** i) for i, op in enumerate(P)]
        g = scaled[0]
        for e in scaled[1:]:
            g = poly_gcd(g, e)
        if g.degree > 0:
            scaled = [e.divexact(g) for e in scaled]
        b_schedule, n_polynomial, degree_candidates = _degree_schedule(scaled)
        if degree_candidates:
            solutions = _poly_solutions_upto(scaled, max(degree_candidates))
    return CaseResult(
        A_choice=A,
        B_choice=B,
        P=tuple(P),
        m=m,
        alphas=alphas,
        z_roots=z_roots,
        b_schedule=tuple(b_schedule),
        n_polynomial=n_polynomial,
        degree_candidates=degree_candidates,
        poly_solutions=tuple(solutions),
    )


def _degree_schedule(ops: list[RationalPolynomial]):
    """Level sums b_j^(s) = sum_i i^j c_{i, s-j} until a nonzero level.

    c_{i,j} is the coefficient of n^(m*-j) in ops[i], m* the max degree.
    Returns (all computed levels, degree polynomial in N, nonneg integer
    root candidates).
    """
    mstar = max(op.degree for op in ops)

    def c(i: int, j: int) -> Fraction:
        return ops[i].coeff(mstar - j) if 0 <= j <= mstar else Fraction(0)

    levels: list[tuple[Fraction, ...]] = []
    for s in range(0, 2 * mstar + len(ops) + 2):
        level = tuple(
            sum(
                (Fraction(i) ** j if not (i == 0 and j == 0) else Fraction(1)) * c(i, s - j)
                for i in range(len(ops))
            )
            for j in range(0, s + 1)
        )
        levels.append(level)
        if any(x != 0 for x in level):
            # degree polynomial: sum_j binom(N, j) b_j = 0
            npoly = RationalPolynomial([0])
            binom = RationalPolynomial([1])
            for j, bj in enumerate(level):
                if j > 0:
                    binom = binom * poly(Fraction(-(j - 1), j), Fraction(1, j))
                npoly = npoly + binom * bj
            roots = rational_roots(npoly) if not npoly.is_zero() else []
            cands = tuple(
                sorted(int(r) for r in roots if r.denominator == 1 and r >= 0)
            )
            return levels, npoly, cands
    return levels, None, ()


def hyper_all() -> list[CaseResult]:
    """All six (A, B) cases."""
    return [hyper_case(A, B) for A, B in product(_A_CHOICES, _B_CHOICES)]


REFERENCE_SPAN = [poly(6, 7, 1), poly(1, 1)]  # n^2+7n+6, n+1


def hyper_verification_report() -> dict:
    """Pass/fail summary of the six-case search, with the erratum notes."""
    cases = hyper_all()
    by_choice = {(str(c.A_choice), str(c.B_choice)): c for c in cases}
    solving = [c for c in cases if c.poly_solutions]
    checks = {
        "six_cases_run": len(cases) == 6,
        "exactly_one_case_solves": len(solving) == 1
        and str(solving[0].A_choice) == "1"
        and str(solving[0].B_choice) == "1",
        "solution_span": bool(solving)
        and span_matches(list(solving[0].poly_solutions), REFERENCE_SPAN),
        "n_poly_n+2_n-1": str(by_choice[("n + 2", "n - 1")].n_polynomial)
        == "n^2 + 3*n + 2",
        "n_poly_n+2_n-2": str(by_choice[("n + 2", "n - 2")].n_polynomial)
        == "n^2 + 5*n + 6",
        "degenerate_alpha_patterns": all(
            [x != 0 for x in by_choice[(a, b)].alphas]
            == [i == 0 for i in range(5)]
            for a, b in (("1", "n - 1"), ("1", "n - 2"))
        )
        and [x != 0 for x in by_choice[("n + 2", "1")].alphas]
        == [i == 4 for i in range(5)],
    }
    checks["ok"] = all(checks.values())
    checks["notes"] = [P4_ERRATUM_NOTE, ALPHA_NOTE]
    return checks
