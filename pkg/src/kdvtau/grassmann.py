"""Points of the KdV Sato Grassmannian and their affine coordinates.

A point of the big cell of GM_2 is spanned by lam^{2k} a(lam) and
lam^{2k+1} b(lam) with a, b power series in 1/lam having constant term 1.
Interleaving the coefficients of a and b into 2x2 blocks gives the loop
matrix G(lam) = sum G_k lam^-k:

    G_11 = sum a_{2k}   lam^-k      G_12 = sum b_{2k+1} lam^-k
    G_21 = sum a_{2k-1} lam^-k      G_22 = sum b_{2k}   lam^-k

(after normalizing b_1 = 0 so that G_0 = I).  The matrix-valued affine
coordinates are then

    Z_{k,l} = [[A_{2k+1,2l}, A_{2k+1,2l+1}], [A_{2k,2l}, A_{2k,2l+1}]]

where A_{m,n} are the scalar affine coordinates of the point.  This module
computes the Z table by two independent routes (a closed formula in the
blocks of G and G^-1, and a seeded recursion), extracts scalar coordinates,
and verifies the generating-series, recursion and symmetry identities.

The built-in point of chief interest is the Witten-Kontsevich point, whose
spanning series c(lam) and q(lam) are power series in lam^-3:

    c_k = (-1)^k (6k)! / (288^k (3k)! (2k)!),    q_k = (1+6k)/(1-6k) c_k.

c is the unique solution of (S^2 - lam^2) c = 0 with c = 1 + O(1/lam) for
the Kac-Schwarz operator S = (1/lam) d/dlam - 1/(2 lam^2) - lam, and
q = -(1/lam) S c.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import ExactComputationError, InsufficientDepthError, OutOfRangeError
from .exactnum import format_rational
from .report import VerificationReport
from .series import (
    M2,
    LaurentSeries,
    MatrixSeries,
    constant_series,
    kac_schwarz_apply,
    matrix_series_inverse,
    negate_argument,
    polynomial_part,
    series_from_json,
    series_to_json,
)

__all__ = [
    "GrassmannPoint",
    "ZTable",
    "AffineTable",
    "normalize_point",
    "wk_c_coeff",
    "wk_q_coeff",
    "wk_point",
    "build_G",
    "wk_G",
    "z_table_direct",
    "z_table_recursive",
    "affine_coordinate",
    "verify_generating_function",
    "verify_symmetry",
    "verify_cq_identity",
    "verify_kac_schwarz",
    "verify_z_equivalence",
    "verify_z_recursion_identity",
    "verify_z_generating_series",
    "point_to_json",
    "point_from_json",
]


# ---------------------------------------------------------------------------
# Points
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GrassmannPoint:
    """Spanning data (a, b) of a big-cell point of GM_2; a_0 = b_0 = 1."""

    a: LaurentSeries
    b: LaurentSeries

    def __post_init__(self) -> None:
        for name, s in (("a", self.a), ("b", self.b)):
            if s.max_exponent is not None and s.max_exponent > 0:
                raise ValueError(f"{name} must be a pure tail series")
            if s.coeff(0) != 1:
                raise ValueError(f"{name} must have constant term 1")

    @property
    def is_normalized(self) -> bool:
        """True when b_1 = 0, i.e. the loop matrix starts at the identity."""
        return self.b.coeff(-1) == 0


def normalize_point(p: GrassmannPoint) -> GrassmannPoint:
    """Replace b by b - b_1 * lam^-1 * a, which kills b_1.

    This is a right multiplication by a constant unitriangular matrix on the
    spanning frame, so the subspace is unchanged.
    """
    b1 = p.b.coeff(-1)
    if b1 == 0:
        return p
    return GrassmannPoint(p.a, p.b - p.a.shift(-1).scale(b1))


# ---------------------------------------------------------------------------
# The Witten-Kontsevich point
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def wk_c_coeff(k: int) -> Fraction:
    """c_k = (-1)^k (6k)! / (288^k (3k)! (2k)!); c_0 = 1."""
    if k < 0:
        raise ValueError("k must be >= 0")
    sign = -1 if k % 2 else 1
    return Fraction(
        sign * math.factorial(6 * k),
        288**k * math.factorial(3 * k) * math.factorial(2 * k),
    )


@lru_cache(maxsize=None)
def wk_q_coeff(k: int) -> Fraction:
    """q_k = (1 + 6k)/(1 - 6k) * c_k; q_0 = 1."""
    return Fraction(1 + 6 * k, 1 - 6 * k) * wk_c_coeff(k)


def wk_point(depth: int) -> GrassmannPoint:
    """The Witten-Kontsevich point with both tails exact through lam^-depth."""
    a = {-3 * k: wk_c_coeff(k) for k in range(depth // 3 + 1) if 3 * k <= depth}
    b = {-3 * k: wk_q_coeff(k) for k in range(depth // 3 + 1) if 3 * k <= depth}
    return GrassmannPoint(
        LaurentSeries.from_dict(a, depth), LaurentSeries.from_dict(b, depth)
    )


# ---------------------------------------------------------------------------
# Loop matrix
# ---------------------------------------------------------------------------


def build_G(p: GrassmannPoint, depth: int) -> MatrixSeries:
    """Interleave (a, b) into the loop matrix with blocks G_0..G_depth.

    Needs a through lam^-2depth and b through lam^-(2depth+1); the point
    must be normalized (b_1 = 0) so that G_0 = I.
    """
    if not p.is_normalized:
        raise ValueError("normalize the point first (b_1 must vanish)")
    need_a, need_b = 2 * depth, 2 * depth + 1
    for name, s, need in (("a", p.a, need_a), ("b", p.b, need_b)):
        if s.tail_order is not None and s.tail_order < need:
            raise InsufficientDepthError(
                f"{name} is only valid through lam^-{s.tail_order}, need lam^-{need}"
            )
    blocks = [
        M2(
            p.a.coeff(-2 * k),
            p.b.coeff(-(2 * k + 1)),
            p.a.coeff(-(2 * k - 1)) if k >= 1 else Fraction(0),
            p.b.coeff(-2 * k),
        )
        for k in range(depth + 1)
    ]
    return MatrixSeries.from_blocks(blocks, depth)


def wk_G(depth: int) -> MatrixSeries:
    return build_G(wk_point(2 * depth + 1), depth)


# ---------------------------------------------------------------------------
# Tables
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ZTable:
    """Matrix-valued affine coordinates Z_{k,l}, 0 <= k <= max_k, 0 <= l <= max_l."""

    max_k: int
    max_l: int
    blocks: tuple[tuple[M2, ...], ...]  # blocks[k][l]

    def entry(self, k: int, l: int) -> M2:
        if not (0 <= k <= self.max_k and 0 <= l <= self.max_l):
            raise OutOfRangeError(f"Z[{k},{l}] outside table {self.max_k}x{self.max_l}")
        return self.blocks[k][l]

    def to_affine_table(self, source: str = "grassmann") -> "AffineTable":
        entries: dict[tuple[int, int], Fraction] = {}
        for k in range(self.max_k + 1):
            for l in range(self.max_l + 1):
                z = self.blocks[k][l]
                for (m, n), v in (
                    ((2 * k + 1, 2 * l), z.a11),
                    ((2 * k + 1, 2 * l + 1), z.a12),
                    ((2 * k, 2 * l), z.a21),
                    ((2 * k, 2 * l + 1), z.a22),
                ):
                    if v != 0:
                        entries[(m, n)] = v
        return AffineTable(2 * self.max_k + 1, 2 * self.max_l + 1, entries, source)


def affine_coordinate(table: ZTable, m: int, n: int) -> Fraction:
    """Scalar affine coordinate A_{m,n} read out of the block layout."""
    if m < 0 or n < 0 or m > 2 * table.max_k + 1 or n > 2 * table.max_l + 1:
        raise OutOfRangeError(f"A[{m},{n}] outside stored blocks")
    z = table.entry(m // 2, n // 2)
    if m % 2 == 1:
        return z.a11 if n % 2 == 0 else z.a12
    return z.a21 if n % 2 == 0 else z.a22


@dataclass(frozen=True)
class AffineTable:
    """Scalar affine coordinates A_{m,n} for 0 <= m <= max_m, 0 <= n <= max_n.

    Only nonzero entries are stored; reads inside the range default to 0.
    """

    max_m: int
    max_n: int
    entries: dict[tuple[int, int], Fraction]
    source: str = "grassmann"

    def value(self, m: int, n: int) -> Fraction:
        if not (0 <= m <= self.max_m and 0 <= n <= self.max_n):
            raise OutOfRangeError(f"A[{m},{n}] outside table {self.max_m}x{self.max_n}")
        return self.entries.get((m, n), Fraction(0))

    def to_json_dict(self) -> dict:
        return {
            "max_m": self.max_m,
            "max_n": self.max_n,
            "source": self.source,
            "entries": [
                [m, n, format_rational(v)]
                for (m, n), v in sorted(self.entries.items())
            ],
        }

    def to_csv_text(self) -> str:
        lines = ["," + ",".join(str(n) for n in range(self.max_n + 1))]
        for m in range(self.max_m + 1):
            row = [str(m)] + [
                format_rational(self.value(m, n)) for n in range(self.max_n + 1)
            ]
            lines.append(",".join(row))
        return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Z tables by two independent routes
# ---------------------------------------------------------------------------


def _require_depth(G: MatrixSeries, need: int) -> None:
    if G.tail_order is not None and G.tail_order < need:
        raise InsufficientDepthError(
            f"loop matrix valid through lam^-{G.tail_order}, need lam^-{need}"
        )


def z_table_direct(G: MatrixSeries, max_k: int, max_l: int) -> ZTable:
    """Closed formula Z_{k,l} = -sum_{j=0..k} G_j U_{k+l+1-j} (U_0 = I)."""
    need = max_k + max_l + 1
    _require_depth(G, need)
    g = G.blocks(need)
    u = matrix_series_inverse(G, need).blocks(need)
    rows = []
    for k in range(max_k + 1):
        row = []
        for l in range(max_l + 1):
            acc = M2.zero()
            for j in range(k + 1):
                if not g[j].is_zero():
                    acc = acc + (g[j] @ u[k + l + 1 - j])
            row.append(-acc)
        rows.append(tuple(row))
    return ZTable(max_k, max_l, tuple(rows))


def z_table_recursive(G: MatrixSeries, max_k: int, max_l: int) -> ZTable:
    """Boundary-seeded recursion Z_{k+1,l} = Z_{k,l+1} + Z_{k,0} Z_{0,l}.

    The top row is seeded by Z_{0,l} = -U_{l+1}; every deeper row follows
    from the recursion, filled along anti-diagonals k+l = const (increasing
    k within a diagonal respects the data dependencies).  The left-column
    boundary data Z_{k,0} = G_{k+1} is then checked against the recursion
    output -- a disagreement would mean G * G^-1 != I.
    """
    need = max_k + max_l + 1
    _require_depth(G, need)
    u = matrix_series_inverse(G, need).blocks(need)

    # table[k][l] for k + l <= max_k + max_l, k <= max_k
    width = max_k + max_l
    table: dict[tuple[int, int], M2] = {}
    for l in range(width + 1):
        table[(0, l)] = -u[l + 1]
    for s in range(1, width + 1):
        for k in range(1, min(s, max_k) + 1):
            l = s - k
            table[(k, l)] = table[(k - 1, l + 1)] + (table[(k - 1, 0)] @ table[(0, l)])

    for k in range(max_k + 1):
        expected = G.block(k + 1)
        if table[(k, 0)] != expected:
            raise ExactComputationError(
                f"recursion boundary mismatch at Z[{k},0]: {table[(k, 0)]} vs {expected}; "
                "the seeds are inconsistent (G times its inverse is not the identity)"
            )

    rows = tuple(
        tuple(table[(k, l)] for l in range(max_l + 1)) for k in range(max_k + 1)
    )
    return ZTable(max_k, max_l, rows)


# ---------------------------------------------------------------------------
# Identity verifiers
# ---------------------------------------------------------------------------


def verify_generating_function(
    G: MatrixSeries, table: ZTable, depth: int
) -> VerificationReport:
    """Expand (I - G(alpha) G(beta)^-1) / (alpha - beta) and compare with Z.

    The numerator N has bivariate blocks N_{i,j} = -G_i U_j for (i,j) != 0
    and N_{0,0} = 0.  Divisibility by alpha - beta is the vanishing of every
    anti-diagonal sum of N, which is asserted before solving; the quotient
    coefficients at alpha^-k-1 beta^-l-1 are Q_{k,l} = sum_r N_{k-r, l+1+r}.
    """
    suite = "generating-function"
    if depth > min(table.max_k, table.max_l):
        raise InsufficientDepthError("Z table smaller than requested bi-degree")
    need = 2 * depth + 1
    _require_depth(G, need)
    g = G.blocks(need)
    u = matrix_series_inverse(G, need).blocks(need)

    def N(i: int, j: int) -> M2:
        if i == 0 and j == 0:
            return M2.zero()
        return -(g[i] @ u[j])

    for s in range(1, need + 1):
        acc = M2.zero()
        for i in range(s + 1):
            acc = acc + N(i, s - i)
        if not acc.is_zero():
            return VerificationReport(
                suite, False, f"bi-degree {depth}",
                failures=[f"anti-diagonal sum {s} of the numerator is {acc}"],
                notes="numerator not divisible by alpha - beta",
            )

    failures = []
    for k in range(depth + 1):
        for l in range(depth + 1):
            q = M2.zero()
            for r in range(k + 1):
                q = q + N(k - r, l + 1 + r)
            if q != table.entry(k, l):
                failures.append(f"(k,l)=({k},{l}): expansion {q} vs table {table.entry(k, l)}")
                if len(failures) >= 3:
                    break
        if len(failures) >= 3:
            break
    return VerificationReport(suite, not failures, f"bi-degree {depth}", failures=failures)


def verify_symmetry(table: ZTable, G: MatrixSeries, depth: int) -> VerificationReport:
    """Z_{l,k} = -adj(Z_{k,l}) for k, l <= depth, valid when det G = 1.

    The determinant condition is checked first on the series through the
    available window; if it fails the report is a skip, not a failure.  In
    scalar form the identity reads A_{n,m} = (-1)^{m+n} A_{m,n}.
    """
    suite = "symmetry"
    if depth > min(table.max_k, table.max_l):
        raise InsufficientDepthError("Z table smaller than requested depth")
    det = G.det()
    window = det.tail_order
    dev = det - constant_series(1, window)
    if not dev.is_zero():
        e = dev.coeffs[-1][0]
        return VerificationReport(
            suite, False, f"k,l <= {depth}", skipped=True,
            notes=f"det G != 1 (first deviation at lam^{e}); symmetry not applicable",
        )
    failures = []
    for k in range(depth + 1):
        for l in range(depth + 1):
            lhs = table.entry(l, k)
            rhs = -table.entry(k, l).adjugate()
            if lhs != rhs:
                failures.append(f"(k,l)=({k},{l}): Z[{l},{k}]={lhs} vs -adj Z[{k},{l}]={rhs}")
                if len(failures) >= 3:
                    break
        if len(failures) >= 3:
            break
    note = f"det G = 1 checked through lam^-{window}" if window is not None else "det G = 1 exact"
    return VerificationReport(suite, not failures, f"k,l <= {depth}", failures=failures, notes=note)


def verify_cq_identity(depth: int) -> VerificationReport:
    """c(lam) q(-lam) + c(-lam) q(lam) = 2 through lam^-depth."""
    suite = "cq-identity"
    p = wk_point(depth)
    c, q = p.a, p.b
    combo = c * negate_argument(q) + negate_argument(c) * q
    residual = combo - constant_series(2, depth)
    if residual.is_zero():
        return VerificationReport(suite, True, f"through lam^-{depth}")
    e, v = residual.coeffs[-1]
    return VerificationReport(
        suite, False, f"through lam^-{depth}",
        failures=[f"coefficient of lam^{e} is {format_rational(v)}, expected 0"],
    )


def verify_kac_schwarz(depth: int) -> VerificationReport:
    """(S^2 - lam^2) c = 0 and q = -(1/lam) S c, through the propagated window.

    Applying S costs one order of validity, so with input depth D the ODE
    residual is certified through lam^-(D-2) and the q-relation through
    lam^-D; both windows are reported.
    """
    suite = "kac-schwarz"
    p = wk_point(depth)
    c, q = p.a, p.b
    ode = kac_schwarz_apply(kac_schwarz_apply(c)) - c.shift(2)
    q_from_c = -kac_schwarz_apply(c).shift(-1)
    failures = []
    if not ode.is_zero():
        e, v = ode.coeffs[-1]
        failures.append(f"ODE residual at lam^{e} is {format_rational(v)}")
    mism = q_from_c.difference_support(q)
    if mism:
        e = mism[0]
        failures.append(
            f"q mismatch at lam^{e}: derived {format_rational(q_from_c.coeff(e))} "
            f"vs closed form {format_rational(q.coeff(e))}"
        )
    detail = (
        f"ODE residual through lam^-{ode.tail_order}, "
        f"q-relation through lam^-{q_from_c.agreement_window(q)}"
    )
    return VerificationReport(suite, not failures, detail, failures=failures)


def verify_z_equivalence(G: MatrixSeries, max_k: int, max_l: int) -> VerificationReport:
    """The closed-formula table equals the recursion-seeded table entrywise."""
    suite = "z-table-equivalence"
    direct = z_table_direct(G, max_k, max_l)
    recursive = z_table_recursive(G, max_k, max_l)
    failures = []
    for k in range(max_k + 1):
        for l in range(max_l + 1):
            if direct.entry(k, l) != recursive.entry(k, l):
                failures.append(
                    f"(k,l)=({k},{l}): direct {direct.entry(k,l)} vs recursive {recursive.entry(k,l)}"
                )
                if len(failures) >= 3:
                    break
        if len(failures) >= 3:
            break
    return VerificationReport(suite, not failures, f"K=L checked to ({max_k},{max_l})", failures=failures)


def verify_z_recursion_identity(table: ZTable) -> VerificationReport:
    """Z_{k+1,l} - Z_{k,l+1} = Z_{k,0} Z_{0,l} on every stored index."""
    suite = "z-recursion"
    failures = []
    for k in range(table.max_k):
        for l in range(table.max_l):
            lhs = table.entry(k + 1, l) - table.entry(k, l + 1)
            rhs = table.entry(k, 0) @ table.entry(0, l)
            if lhs != rhs:
                failures.append(f"(k,l)=({k},{l}): {lhs} vs {rhs}")
                if len(failures) >= 3:
                    break
        if len(failures) >= 3:
            break
    return VerificationReport(
        suite, not failures,
        f"k < {table.max_k}, l < {table.max_l}", failures=failures,
    )


def verify_z_generating_series(G: MatrixSeries, k_max: int, table: ZTable) -> VerificationReport:
    """G(lam) (lam^k G(lam)^-1)_+ = lam^k + sum_l Z_{l,k} lam^-l-1 for k <= k_max."""
    suite = "z-generating-series"
    order = G.tail_order
    if order is None:
        raise InsufficientDepthError("need a truncated loop matrix to bound the check")
    if k_max > table.max_l:
        raise InsufficientDepthError("Z table narrower than requested k range")
    Ginv = matrix_series_inverse(G)
    failures = []
    checked_l = None
    for k in range(k_max + 1):
        shifted = polynomial_part(Ginv.shift(k))
        prod = G @ shifted
        # valid window of prod: order - k; compare lam^-l-1 entries for l + 1 <= order - k
        l_top = min(order - k - 1, table.max_k)
        checked_l = l_top if checked_l is None else min(checked_l, l_top)
        expect: dict[int, M2] = {k: M2.identity()}
        for l in range(l_top + 1):
            expect[-l - 1] = table.entry(l, k)
        exps = set(expect)
        for e in range(-(l_top + 1), k + 1):
            got = M2(
                prod.e11.coeff(e), prod.e12.coeff(e),
                prod.e21.coeff(e), prod.e22.coeff(e),
            )
            want = expect.get(e, M2.zero())
            if got != want:
                failures.append(f"k={k}, lam^{e}: {got} vs {want}")
                if len(failures) >= 3:
                    break
        if len(failures) >= 3:
            break
    return VerificationReport(
        suite, not failures,
        f"k <= {k_max}, rows l <= {checked_l}", failures=failures,
    )


# ---------------------------------------------------------------------------
# Point file format
# ---------------------------------------------------------------------------


def point_to_json(p: GrassmannPoint, tail_order: int | None = None) -> dict:
    return {"a": series_to_json(p.a, tail_order), "b": series_to_json(p.b, tail_order)}


def point_from_json(data: dict) -> GrassmannPoint:
    return GrassmannPoint(series_from_json(data["a"]), series_from_json(data["b"]))
