"""Truncated formal Laurent series in 1/lam, scalar and 2x2-matrix valued.

A `LaurentSeries` is a finite collection of exact rational coefficients
together with an explicit validity window.  The polynomial head (exponents
>= 0) is always finite and exact; tail coefficients are exact down to
lam^(-tail_order).  Coefficients below the window are *unknown* -- they are
never silently treated as zero, and asking for one raises
`InsufficientDepthError`.  A `tail_order` of None means the series is exact
at every order (a finite Laurent polynomial).

Every operation computes the exact guaranteed window of its result.  For a
product this is min(O_a - h_b, O_b - h_a), where h is the top exponent
actually occupied by the other factor: the first unknown coefficient of one
factor (at lam^(-O-1)) can meet the other factor's top term and contaminate
everything below that level.  Comparisons are therefore only meaningful on
the overlap of windows, and the verifiers report the depth actually checked.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping

from .errors import InsufficientDepthError, NonUnitError, NotNormalizedError
from .exactnum import RationalLike, as_rational, format_rational, parse_rational

__all__ = [
    "LaurentSeries",
    "M2",
    "MatrixSeries",
    "series_mul",
    "series_inverse",
    "matrix_series_inverse",
    "polynomial_part",
    "negate_argument",
    "kac_schwarz_apply",
    "lam_power",
    "constant_series",
    "tail_series",
    "series_to_json",
    "series_from_json",
]


def _order_min(*orders: int | None) -> int | None:
    """Minimum of truncation orders, with None acting as +infinity."""
    finite = [o for o in orders if o is not None]
    return min(finite) if finite else None


@dataclass(frozen=True)
class LaurentSeries:
    """Sparse exact Laurent series with explicit truncation bookkeeping.

    coeffs holds (exponent, value) pairs, sorted by exponent, zeros dropped.
    tail_order O means coefficients of lam^e are known exactly for all
    e >= -O; None means known at every order.
    """

    coeffs: tuple[tuple[int, Fraction], ...]
    tail_order: int | None

    @classmethod
    def from_dict(
        cls, data: Mapping[int, RationalLike], tail_order: int | None
    ) -> "LaurentSeries":
        items = []
        for e, v in data.items():
            v = as_rational(v)
            if v == 0:
                continue
            if tail_order is not None and e < -tail_order:
                raise ValueError(
                    f"coefficient at lam^{e} lies below the validity window "
                    f"(tail_order={tail_order})"
                )
            items.append((e, v))
        items.sort()
        if tail_order is not None and tail_order < 0:
            raise ValueError("tail_order must be >= 0 or None")
        return cls(tuple(items), tail_order)

    @cached_property
    def _map(self) -> dict[int, Fraction]:
        return dict(self.coeffs)

    # -- window bookkeeping -------------------------------------------------

    def is_known(self, e: int) -> bool:
        return self.tail_order is None or e >= -self.tail_order

    def coeff(self, e: int) -> Fraction:
        """Exact coefficient of lam^e; error if e is below the window."""
        if not self.is_known(e):
            raise InsufficientDepthError(
                f"coefficient of lam^{e} is beyond tail_order {self.tail_order}"
            )
        return self._map.get(e, Fraction(0))

    @property
    def max_exponent(self) -> int | None:
        """Top occupied exponent, None for the (stored-)zero series."""
        return self.coeffs[-1][0] if self.coeffs else None

    @property
    def head_degree(self) -> int:
        m = self.max_exponent
        return max(0, m) if m is not None else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    # -- linear structure ---------------------------------------------------

    def __add__(self, other: "LaurentSeries") -> "LaurentSeries":
        order = _order_min(self.tail_order, other.tail_order)
        out = dict(self.coeffs)
        for e, v in other.coeffs:
            out[e] = out.get(e, Fraction(0)) + v
        return _clip(out, order)

    def __sub__(self, other: "LaurentSeries") -> "LaurentSeries":
        return self + (-other)

    def __neg__(self) -> "LaurentSeries":
        return LaurentSeries(tuple((e, -v) for e, v in self.coeffs), self.tail_order)

    def scale(self, c: RationalLike) -> "LaurentSeries":
        c = as_rational(c)
        if c == 0:
            return LaurentSeries((), self.tail_order)
        return LaurentSeries(tuple((e, c * v) for e, v in self.coeffs), self.tail_order)

    def shift(self, k: int) -> "LaurentSeries":
        """Multiply by lam^k; the validity window shifts along."""
        order = None if self.tail_order is None else self.tail_order - k
        return LaurentSeries(tuple((e + k, v) for e, v in self.coeffs), order)

    def __mul__(self, other: "LaurentSeries") -> "LaurentSeries":
        return series_mul(self, other)

    # -- comparisons --------------------------------------------------------

    def agreement_window(self, other: "LaurentSeries") -> int | None:
        return _order_min(self.tail_order, other.tail_order)

    def difference_support(self, other: "LaurentSeries") -> list[int]:
        """Exponents (within the common window) where the two series differ."""
        window = self.agreement_window(other)
        exps = {e for e, _ in self.coeffs} | {e for e, _ in other.coeffs}
        out = []
        for e in sorted(exps):
            if window is not None and e < -window:
                continue
            if self._map.get(e, Fraction(0)) != other._map.get(e, Fraction(0)):
                out.append(e)
        return out

    def truncated(self, order: int) -> "LaurentSeries":
        """Forget coefficients below lam^(-order) and shrink the window."""
        if self.tail_order is not None and order > self.tail_order:
            raise InsufficientDepthError(
                f"cannot extend tail_order {self.tail_order} to {order}"
            )
        kept = tuple((e, v) for e, v in self.coeffs if e >= -order)
        return LaurentSeries(kept, order)

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = [f"({format_rational(v)})*lam^{e}" for e, v in reversed(self.coeffs)]
        return " + ".join(parts)


def _clip(data: dict[int, Fraction], order: int | None) -> LaurentSeries:
    """Drop zeros and anything below the validity window."""
    items = tuple(
        sorted(
            (e, v)
            for e, v in data.items()
            if v != 0 and (order is None or e >= -order)
        )
    )
    return LaurentSeries(items, order)


def constant_series(c: RationalLike, tail_order: int | None = None) -> LaurentSeries:
    return LaurentSeries.from_dict({0: as_rational(c)}, tail_order)


def lam_power(k: int) -> LaurentSeries:
    """The exact monomial lam^k."""
    return LaurentSeries.from_dict({k: 1}, None)


def tail_series(values: Iterable[RationalLike], tail_order: int | None = None) -> LaurentSeries:
    """Series sum(values[k] * lam^-k) with window defaulting to len-1."""
    vals = [as_rational(v) for v in values]
    order = tail_order if tail_order is not None else len(vals) - 1
    return LaurentSeries.from_dict({-k: v for k, v in enumerate(vals)}, order)


def series_mul(a: LaurentSeries, b: LaurentSeries) -> LaurentSeries:
    """Exact Cauchy product on the guaranteed window.

    The window is min(O_a - h_b, O_b - h_a): the first unknown coefficient
    of one factor meets the top occupied exponent of the other.
    """
    candidates: list[int] = []
    if a.tail_order is not None:
        if b.max_exponent is not None:
            candidates.append(a.tail_order - b.max_exponent)
        if b.tail_order is not None:
            candidates.append(a.tail_order + b.tail_order + 2)
    if b.tail_order is not None and a.max_exponent is not None:
        candidates.append(b.tail_order - a.max_exponent)
    order = min(candidates) if candidates else None
    out: dict[int, Fraction] = {}
    for e1, v1 in a.coeffs:
        for e2, v2 in b.coeffs:
            e = e1 + e2
            if order is not None and e < -order:
                continue
            out[e] = out.get(e, Fraction(0)) + v1 * v2
    return _clip(out, order)


def series_inverse(a: LaurentSeries, order: int | None = None) -> LaurentSeries:
    """Inverse of a series with constant term 1 and no positive powers.

    The result satisfies a * inverse(a) = 1 through the retained window.
    For an exact input (tail_order None) the target `order` must be given,
    since the inverse generally has infinitely many terms.
    """
    if a.max_exponent is not None and a.max_exponent > 0:
        raise NonUnitError("series with positive powers of lam cannot be inverted here")
    if a.coeff(0) != 1:
        raise NonUnitError(f"constant term must be 1, got {format_rational(a.coeff(0))}")
    order = _order_min(a.tail_order, order)
    if order is None:
        raise NonUnitError("an explicit target order is required to invert an exact series")
    inv = [Fraction(1)] + [Fraction(0)] * order
    for k in range(1, order + 1):
        s = Fraction(0)
        for j in range(1, k + 1):
            aj = a._map.get(-j, Fraction(0))
            if aj:
                s += aj * inv[k - j]
        inv[k] = -s
    return LaurentSeries.from_dict({-k: v for k, v in enumerate(inv)}, order)


def polynomial_part(a: "LaurentSeries | MatrixSeries") -> "LaurentSeries | MatrixSeries":
    """Keep exponents >= 0 only.  The result is exact: the discarded tail is
    inside the validity window, so the kept coefficients are complete."""
    if isinstance(a, MatrixSeries):
        return MatrixSeries(*(polynomial_part(x) for x in a.entries()))
    kept = tuple((e, v) for e, v in a.coeffs if e >= 0)
    return LaurentSeries(kept, None)


def negate_argument(a: LaurentSeries) -> LaurentSeries:
    """a(-lam): multiply the coefficient of lam^e by (-1)^e."""
    return LaurentSeries(
        tuple((e, v if e % 2 == 0 else -v) for e, v in a.coeffs), a.tail_order
    )


def kac_schwarz_apply(a: LaurentSeries) -> LaurentSeries:
    """Image under the operator (1/lam) d/dlam - 1/(2 lam^2) - lam.

    Termwise: lam^e maps to (e - 1/2) lam^(e-2) - lam^(e+1).  The -lam part
    raises exponents, so the unknown coefficient at lam^(-O-1) surfaces at
    lam^(-O): the window shrinks by one.
    """
    order = None if a.tail_order is None else a.tail_order - 1
    out: dict[int, Fraction] = {}
    for e, v in a.coeffs:
        for ee, vv in ((e - 2, v * (Fraction(e) - Fraction(1, 2))), (e + 1, -v)):
            if order is not None and ee < -order:
                continue
            out[ee] = out.get(ee, Fraction(0)) + vv
    return _clip(out, order)


def series_to_json(s: LaurentSeries, tail_order: int | None = None) -> dict:
    """JSON form {"head": [[e, "p/q"], ...], "tail_order": O, "tail": [...]}.

    head lists the exponents > 0; tail[k] is the coefficient of lam^-k for
    k = 0..O.  An exact series needs an explicit serialization order.
    """
    order = s.tail_order if tail_order is None else tail_order
    if order is None:
        order = max(0, -(s.coeffs[0][0] if s.coeffs else 0))
    if s.tail_order is not None and order > s.tail_order:
        raise InsufficientDepthError(
            f"cannot serialize to order {order} beyond tail_order {s.tail_order}"
        )
    head = [[e, format_rational(v)] for e, v in s.coeffs if e > 0]
    tail = [format_rational(s.coeff(-k)) for k in range(order + 1)]
    return {"head": head, "tail_order": order, "tail": tail}


def series_from_json(data: dict) -> LaurentSeries:
    order = int(data["tail_order"])
    coeffs: dict[int, Fraction] = {}
    for e, text in data.get("head", []):
        coeffs[int(e)] = parse_rational(text)
    for k, text in enumerate(data["tail"]):
        if k > order:
            raise ValueError("tail longer than tail_order allows")
        coeffs[-k] = coeffs.get(-k, Fraction(0)) + parse_rational(text)
    return LaurentSeries.from_dict(coeffs, order)


# ---------------------------------------------------------------------------
# 2x2 matrices and matrix-valued series
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class M2:
    """Exact 2x2 matrix, row-major entries."""

    a11: Fraction
    a12: Fraction
    a21: Fraction
    a22: Fraction

    @classmethod
    def of(cls, a11: RationalLike, a12: RationalLike, a21: RationalLike, a22: RationalLike) -> "M2":
        return cls(as_rational(a11), as_rational(a12), as_rational(a21), as_rational(a22))

    @classmethod
    def zero(cls) -> "M2":
        return cls.of(0, 0, 0, 0)

    @classmethod
    def identity(cls) -> "M2":
        return cls.of(1, 0, 0, 1)

    @classmethod
    def diag(cls, x: RationalLike, y: RationalLike) -> "M2":
        return cls.of(x, 0, 0, y)

    def __add__(self, other: "M2") -> "M2":
        return M2(self.a11 + other.a11, self.a12 + other.a12,
                  self.a21 + other.a21, self.a22 + other.a22)

    def __sub__(self, other: "M2") -> "M2":
        return M2(self.a11 - other.a11, self.a12 - other.a12,
                  self.a21 - other.a21, self.a22 - other.a22)

    def __neg__(self) -> "M2":
        return M2(-self.a11, -self.a12, -self.a21, -self.a22)

    def __matmul__(self, other: "M2") -> "M2":
        return M2(
            self.a11 * other.a11 + self.a12 * other.a21,
            self.a11 * other.a12 + self.a12 * other.a22,
            self.a21 * other.a11 + self.a22 * other.a21,
            self.a21 * other.a12 + self.a22 * other.a22,
        )

    def scale(self, c: RationalLike) -> "M2":
        c = as_rational(c)
        return M2(c * self.a11, c * self.a12, c * self.a21, c * self.a22)

    def transpose(self) -> "M2":
        return M2(self.a11, self.a21, self.a12, self.a22)

    def adjugate(self) -> "M2":
        """adj(M) = [[d, -b], [-c, a]]; equals sigma2 M^T sigma2 for 2x2."""
        return M2(self.a22, -self.a12, -self.a21, self.a11)

    def swap_diagonal(self) -> "M2":
        """eta M^T eta with eta = [[0,1],[1,0]]: swaps the diagonal entries."""
        return M2(self.a22, self.a12, self.a21, self.a11)

    def det(self) -> Fraction:
        return self.a11 * self.a22 - self.a12 * self.a21

    def is_zero(self) -> bool:
        return self.a11 == 0 and self.a12 == 0 and self.a21 == 0 and self.a22 == 0

    def rows(self) -> list[list[Fraction]]:
        return [[self.a11, self.a12], [self.a21, self.a22]]

    def __str__(self) -> str:
        r = [[format_rational(x) for x in row] for row in self.rows()]
        return f"[[{r[0][0]}, {r[0][1]}], [{r[1][0]}, {r[1][1]}]]"


@dataclass(frozen=True)
class MatrixSeries:
    """2x2 matrix of Laurent series; blocks are the coefficients of lam^-k."""

    e11: LaurentSeries
    e12: LaurentSeries
    e21: LaurentSeries
    e22: LaurentSeries

    @classmethod
    def from_blocks(cls, blocks: Iterable[M2], tail_order: int | None = None) -> "MatrixSeries":
        blocks = list(blocks)
        order = tail_order if tail_order is not None else len(blocks) - 1
        grids: list[dict[int, Fraction]] = [{}, {}, {}, {}]
        for k, blk in enumerate(blocks):
            for slot, v in enumerate((blk.a11, blk.a12, blk.a21, blk.a22)):
                if v != 0:
                    grids[slot][-k] = v
        return cls(*(LaurentSeries.from_dict(g, order) for g in grids))

    def entries(self) -> tuple[LaurentSeries, LaurentSeries, LaurentSeries, LaurentSeries]:
        return (self.e11, self.e12, self.e21, self.e22)

    @property
    def tail_order(self) -> int | None:
        return _order_min(*(s.tail_order for s in self.entries()))

    def block(self, k: int) -> M2:
        """Coefficient matrix of lam^-k (errors beyond the window)."""
        return M2(
            self.e11.coeff(-k), self.e12.coeff(-k),
            self.e21.coeff(-k), self.e22.coeff(-k),
        )

    def blocks(self, through: int) -> list[M2]:
        return [self.block(k) for k in range(through + 1)]

    def __add__(self, other: "MatrixSeries") -> "MatrixSeries":
        return MatrixSeries(*(x + y for x, y in zip(self.entries(), other.entries())))

    def __sub__(self, other: "MatrixSeries") -> "MatrixSeries":
        return MatrixSeries(*(x - y for x, y in zip(self.entries(), other.entries())))

    def __neg__(self) -> "MatrixSeries":
        return MatrixSeries(*(-x for x in self.entries()))

    def __matmul__(self, other: "MatrixSeries") -> "MatrixSeries":
        a11, a12, a21, a22 = self.entries()
        b11, b12, b21, b22 = other.entries()
        return MatrixSeries(
            a11 * b11 + a12 * b21,
            a11 * b12 + a12 * b22,
            a21 * b11 + a22 * b21,
            a21 * b12 + a22 * b22,
        )

    def shift(self, k: int) -> "MatrixSeries":
        return MatrixSeries(*(s.shift(k) for s in self.entries()))

    def det(self) -> LaurentSeries:
        return self.e11 * self.e22 - self.e12 * self.e21

    def difference_support(self, other: "MatrixSeries") -> list[int]:
        out: set[int] = set()
        for x, y in zip(self.entries(), other.entries()):
            out.update(x.difference_support(y))
        return sorted(out)

    @classmethod
    def identity(cls, tail_order: int | None = None) -> "MatrixSeries":
        one = constant_series(1, tail_order)
        zero = LaurentSeries.from_dict({}, tail_order)
        return cls(one, zero, zero, one)


def matrix_series_inverse(G: MatrixSeries, order: int | None = None) -> MatrixSeries:
    """Inverse of G = I + G_1/lam + ... as I + sum U_k lam^-k.

    Solves G * U = I block-recursively: U_0 = I and
    U_k = -sum_{j=1..k} G_j U_{k-j}.  Requires G_0 = I and a pure tail.
    """
    for s in G.entries():
        if s.max_exponent is not None and s.max_exponent > 0:
            raise NotNormalizedError("matrix series with positive powers cannot be inverted")
    order = _order_min(G.tail_order, order)
    if order is None:
        raise NotNormalizedError("an explicit target order is required to invert an exact matrix series")
    g = [G.block(k) for k in range(order + 1)]
    if g[0] != M2.identity():
        raise NotNormalizedError(f"leading block must be the identity, got {g[0]}")
    u: list[M2] = [M2.identity()]
    for k in range(1, order + 1):
        acc = M2.zero()
        for j in range(1, k + 1):
            if not g[j].is_zero():
                acc = acc + (g[j] @ u[k - j])
        u.append(-acc)
    return MatrixSeries.from_blocks(u, order)
