"""Zhou's closed-form hook coefficients and their identification with the
Grassmannian affine coordinates of the Witten-Kontsevich point.

The raw coefficients A^Z_{m,n} live in Q[sqrt(-2)] and are supported on
m + n = 2 (mod 3), split into three index families by (m mod 3, n mod 3):

    family (2,0):  (row, col) = (3m-1, 3n)      m >= 1, n >= 0
    family (0,2):  (row, col) = (3m-3, 3n+2)    equal to the (2,0) value
    family (1,1):  (row, col) = (3m-2, 3n+1)

with the closed form (P below is the common prefactor)

    P(m, n) = (-sqrt(-2)/144)^(m+n) (6m+1)!!/(2(m+n))!
              * prod_{j=0}^{n-1}(m+j) * prod_{j=1}^{n}(2m+2j-1)

    A^Z_{3m-1,3n} = A^Z_{3m-3,3n+2} = (-1)^n   P(m,n) (B_n(m) + b_n/(6m+1))
    A^Z_{3m-2,3n+1}                = (-1)^(n+1) P(m,n) (B_n(m) + b_n/(6m-1))

where b_k = 2^k (6k+1)!!/(2k)! and B_n(x) is the degree-(n-1) polynomial
B_n(x) = (1/6) sum_{j=1}^{n} 108^j b_{n-j} (x+n)_[j-1], B_0 = 0.

Rescaling by B_{m,n} = (sqrt(-2))^(m+n+1) A^Z_{m,n} lands in Q; the closed
forms are evaluated verbatim in Q[sqrt(-2)] and the rationality of the
rescaled value is asserted rather than assumed, so a transcription error in
any formula would surface as a NonRationalError.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import NonRationalError
from .exactnum import (
    ExtScalar,
    RationalLike,
    SQRT_MINUS_TWO,
    as_rational,
    ext_to_rational,
    factorial,
    falling_factorial,
    format_rational,
    odd_double_factorial,
)
from .grassmann import AffineTable
from .report import VerificationReport

__all__ = [
    "ZhouIndex",
    "b_seq",
    "B_poly",
    "zhou_A",
    "rescale_B",
    "zhou_affine_table",
    "verify_zhou_match",
    "verify_Bn_recursion",
    "verify_combinatorial_identity",
    "verify_two_step_recursion",
    "verify_b_symmetry",
    "combinatorial_lhs",
    "combinatorial_rhs",
]


@dataclass(frozen=True)
class ZhouIndex:
    """A coefficient position (row, col) with its mod-3 support family."""

    row: int
    col: int

    def __post_init__(self) -> None:
        if self.row < 0 or self.col < 0:
            raise ValueError("indices must be non-negative")

    @property
    def family(self) -> str:
        """One of "(2,0)", "(0,2)", "(1,1)" or "zero".

        The support condition row + col = 2 (mod 3) holds exactly for the
        three named families.
        """
        key = (self.row % 3, self.col % 3)
        return {(2, 0): "(2,0)", (0, 2): "(0,2)", (1, 1): "(1,1)"}.get(key, "zero")

    def resolve(self) -> tuple[int, int]:
        """The (m, n) parameters of the closed form for this position."""
        fam = self.family
        if fam == "(2,0)":
            return (self.row + 1) // 3, self.col // 3
        if fam == "(0,2)":
            return self.row // 3 + 1, (self.col - 2) // 3
        if fam == "(1,1)":
            return (self.row + 2) // 3, (self.col - 1) // 3
        raise ValueError(f"position ({self.row},{self.col}) is outside the support")


@lru_cache(maxsize=None)
def b_seq(k: int) -> Fraction:
    """b_k = 2^k (6k+1)!! / (2k)!."""
    if k < 0:
        raise ValueError("k must be >= 0")
    return Fraction(2**k) * odd_double_factorial(6 * k + 1) / factorial(2 * k)


def B_poly(n: int, x: RationalLike) -> Fraction:
    """B_n(x) = (1/6) sum_{j=1}^{n} 108^j b_{n-j} (x+n)_[j-1]; B_0 = 0."""
    if n < 0:
        raise ValueError("n must be >= 0")
    x = as_rational(x)
    acc = Fraction(0)
    for j in range(1, n + 1):
        acc += Fraction(108) ** j * b_seq(n - j) * falling_factorial(x + n, j - 1)
    return acc / 6


def _prefactor(m: int, n: int) -> ExtScalar:
    base = ExtScalar(Fraction(0), Fraction(-1, 144))  # -sqrt(-2)/144
    p = base ** (m + n)
    scalar = odd_double_factorial(6 * m + 1) / factorial(2 * (m + n))
    for j in range(n):
        scalar *= m + j
    for j in range(1, n + 1):
        scalar *= 2 * m + 2 * j - 1
    return p * scalar


@lru_cache(maxsize=None)
def zhou_A(idx: ZhouIndex) -> ExtScalar:
    """The raw coefficient at idx, an element of Q[sqrt(-2)]."""
    fam = idx.family
    if fam == "zero":
        return ExtScalar.from_rational(0)
    m, n = idx.resolve()
    if fam in ("(2,0)", "(0,2)"):
        sign = 1 if n % 2 == 0 else -1
        tail = B_poly(n, m) + b_seq(n) / (6 * m + 1)
    else:
        sign = -1 if n % 2 == 0 else 1
        tail = B_poly(n, m) + b_seq(n) / (6 * m - 1)
    return _prefactor(m, n) * (sign * tail)


@lru_cache(maxsize=None)
def rescale_B(row: int, col: int) -> Fraction:
    """B_{row,col} = (sqrt(-2))^(row+col+1) * A^Z_{row,col}, asserted rational."""
    value = SQRT_MINUS_TWO ** (row + col + 1) * zhou_A(ZhouIndex(row, col))
    try:
        return ext_to_rational(value)
    except NonRationalError as exc:
        raise NonRationalError(
            f"rescaled coefficient at ({row},{col}) is not rational: {value}"
        ) from exc


def zhou_affine_table(max_m: int, max_n: int) -> AffineTable:
    """The rescaled coefficients assembled as an affine-coordinate table."""
    entries: dict[tuple[int, int], Fraction] = {}
    for m in range(max_m + 1):
        for n in range(max_n + 1):
            if (m + n) % 3 != 2:
                continue
            v = rescale_B(m, n)
            if v != 0:
                entries[(m, n)] = v
    return AffineTable(max_m, max_n, entries, source="zhou")


# ---------------------------------------------------------------------------
# Verifiers
# ---------------------------------------------------------------------------


def verify_zhou_match(grassmann_table: AffineTable, max_m: int, max_n: int) -> VerificationReport:
    """Entrywise equality of the Grassmannian and closed-form tables."""
    suite = "zhou-match"
    failures = []
    for m in range(max_m + 1):
        for n in range(max_n + 1):
            lhs = grassmann_table.value(m, n)
            rhs = rescale_B(m, n)
            if lhs != rhs:
                failures.append(
                    f"({m},{n}): grassmann {format_rational(lhs)} vs closed form {format_rational(rhs)}"
                )
                if len(failures) >= 3:
                    break
        if len(failures) >= 3:
            break
    return VerificationReport(suite, not failures, f"0 <= m,n <= {min(max_m, max_n)}", failures=failures)


def verify_Bn_recursion(n: int, sample_xs: list[RationalLike]) -> VerificationReport:
    """B_n(x) = 108(x+2) B_{n-1}(x+1) + 105 B_{n-1}(x+1)/x
                - 18(n-1) b_{n-1}/x + 18 b_{n-1}, at nonzero sample points."""
    suite = "Bn-recursion"
    if n < 1:
        raise ValueError("recursion starts at n = 1")
    failures = []
    for x in sample_xs:
        x = as_rational(x)
        if x == 0:
            raise ValueError("sample points must be nonzero (the relation divides by x)")
        lhs = B_poly(n, x)
        prev = B_poly(n - 1, x + 1)
        rhs = (
            108 * (x + 2) * prev
            + 105 * prev / x
            - 18 * (n - 1) * b_seq(n - 1) / x
            + 18 * b_seq(n - 1)
        )
        if lhs != rhs:
            failures.append(f"n={n}, x={format_rational(x)}: {format_rational(lhs)} vs {format_rational(rhs)}")
    return VerificationReport(
        suite, not failures, f"n={n}, {len(sample_xs)} sample points", failures=failures
    )


def combinatorial_lhs(m: int, n: int) -> Fraction:
    """m(2m+1)(B_n(m) + b_n/(6m-1)) - (6m+7)(6m+5)(6m+3)(B_{n-1}(m+1) + b_{n-1}/(6m+7))."""
    first = m * (2 * m + 1) * (B_poly(n, m) + b_seq(n) / (6 * m - 1))
    second = (6 * m + 7) * (6 * m + 5) * (6 * m + 3) * (
        B_poly(n - 1, m + 1) + b_seq(n - 1) / (6 * m + 7)
    )
    return first - second


def combinatorial_rhs(m: int, n: int) -> Fraction:
    """(6n-1)!! (2m+1) (m+n) / ((6m-1) n (2n-1)!! (n-1)!).

    Equivalent closed form of the right-hand side: dividing the identity
    B_{3m-2,3n+1} - B_{3m,3n-1} = -B_{3m-2,1} B_{0,3n-1} by the common
    prefactor of the closed forms and using B_{0,3n-1} = -c_n together with
    (6n)! = 2^(3n) (3n)! (6n-1)!! collapses the boundary product to this.
    """
    return (
        odd_double_factorial(6 * n - 1)
        * (2 * m + 1)
        * (m + n)
        / (Fraction(6 * m - 1) * n * odd_double_factorial(2 * n - 1) * factorial(n - 1))
    )


def verify_combinatorial_identity(m: int, n: int) -> VerificationReport:
    """The scalar identity equivalent to one family case of the two-step
    recursion, B_{3m-2,3n+1} - B_{3m,3n-1} = -B_{3m-2,1} B_{0,3n-1}."""
    suite = "combinatorial-identity"
    if m < 1 or n < 1:
        raise ValueError("m, n must be >= 1")
    lhs = combinatorial_lhs(m, n)
    rhs = combinatorial_rhs(m, n)
    failures = []
    if lhs != rhs:
        failures.append(f"(m,n)=({m},{n}): {format_rational(lhs)} vs {format_rational(rhs)}")
    return VerificationReport(suite, not failures, f"(m,n)=({m},{n})", failures=failures)


def verify_two_step_recursion(max_sum: int) -> VerificationReport:
    """B_{m+2,n} - B_{m,n+2} = B_{m,0} B_{1,n} + B_{m,1} B_{0,n} for m+n <= max_sum."""
    suite = "two-step-recursion"
    failures = []
    for m in range(max_sum + 1):
        for n in range(max_sum - m + 1):
            lhs = rescale_B(m + 2, n) - rescale_B(m, n + 2)
            rhs = rescale_B(m, 0) * rescale_B(1, n) + rescale_B(m, 1) * rescale_B(0, n)
            if lhs != rhs:
                failures.append(f"(m,n)=({m},{n}): {format_rational(lhs)} vs {format_rational(rhs)}")
                if len(failures) >= 3:
                    break
        if len(failures) >= 3:
            break
    return VerificationReport(suite, not failures, f"m+n <= {max_sum}", failures=failures)


def verify_b_symmetry(max_m: int, max_n: int) -> VerificationReport:
    """B_{n,m} = (-1)^(m+n) B_{m,n} for all m <= max_m, n <= max_n."""
    suite = "coefficient-symmetry"
    failures = []
    for m in range(max_m + 1):
        for n in range(max_n + 1):
            sign = 1 if (m + n) % 2 == 0 else -1
            if rescale_B(n, m) != sign * rescale_B(m, n):
                failures.append(f"({m},{n})")
                if len(failures) >= 3:
                    break
        if len(failures) >= 3:
            break
    return VerificationReport(suite, not failures, f"m <= {max_m}, n <= {max_n}", failures=failures)
