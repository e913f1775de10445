"""Truncated tau functions, coupling-constant form, and intersection numbers.

A tau series is assembled from an affine-coordinate table as

    tau(theta) = sum over |mu| <= D of A_mu s_mu(theta),

graded-exact through degree D.  The KdV coupling constants are
t_k = -(2k+1)!! theta_{2k+1} (the even theta flows are trivial and are set
to zero before any work in t).  With Z(t) the tau series in t variables,
the correlators are read off the free energy

    <tau_{k_1} ... tau_{k_n}> = (prod multiplicities!) x
                                [coefficient of prod t_{k_i}] log Z,

nonzero only when sum k_i = 3g - 3 + n for an integer genus g >= 0.

Differential identities (string equation, the flows of the hierarchy) are
verified on the residual polynomial; the graded reliability bound of the
residual is computed by the polynomial arithmetic itself, so a report never
asserts vanishing on coefficients contaminated by truncation.  For the
flows, u = d^2/dt_0^2 log Z and the inverse derivative inside the recursion
operator 2u + u_x d^-1 + (1/4) d^2 is resolved exactly as
d^-1 u_{t_{p-1}} = d_{t_{p-1}} d_{t_0} log Z, which is an antiderivative
with no free constant.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import DegreeExceededError, InsufficientTableError
from .exactnum import format_rational, odd_double_factorial
from .grassmann import AffineTable
from .report import VerificationReport
from .schur import (
    GradedPoly,
    Monomial,
    giambelli_coeff,
    graded_log,
    partitions_up_to,
    schur_poly,
)

__all__ = [
    "TauSeries",
    "CorrelatorSpec",
    "IntersectionResult",
    "tau_truncated",
    "to_t_variables",
    "log_series",
    "free_energy",
    "intersection_number",
    "verify_string_equation",
    "verify_kdv_flow",
    "verify_dimension_filter",
    "verify_string_recursion",
    "initial_data",
]


@dataclass(frozen=True)
class TauSeries:
    """Tau series in theta variables, exact through graded degree `degree`."""

    poly: GradedPoly
    degree: int
    source: str

    def __post_init__(self) -> None:
        if self.poly.constant_term() != 1:
            raise ValueError("a tau series has constant term 1")


def tau_truncated(table: AffineTable, degree: int) -> TauSeries:
    """sum_{|mu| <= degree} A_mu s_mu(theta) with Giambelli minors from `table`.

    Partitions of weight <= D have hooks with arm and leg at most D - 1, so
    the table must extend at least that far.
    """
    need = max(degree - 1, 0)
    if table.max_m < need or table.max_n < need:
        raise InsufficientTableError(
            f"table {table.max_m}x{table.max_n} too small for tau degree {degree}"
        )
    acc = GradedPoly.zero("theta", degree)
    for mu in partitions_up_to(degree):
        a = giambelli_coeff(mu, table)
        if a != 0:
            acc = acc + schur_poly(mu).truncate(degree).scale(a)
    return TauSeries(acc, degree, table.source)


@lru_cache(maxsize=None)
def _theta_to_t_factor(j: int) -> Fraction:
    # theta_{2k+1} = -t_k / (2k+1)!!
    return Fraction(-1) / odd_double_factorial(j)


def to_t_variables(tau: TauSeries) -> GradedPoly:
    """Substitute theta_{2k+1} = -t_k/(2k+1)!! and drop the even thetas.

    Grading is preserved: deg t_k = 2k + 1 = deg theta_{2k+1}.
    """
    out: dict[Monomial, Fraction] = {}
    for mon, c in tau.poly.terms.items():
        if any(var % 2 == 0 for var, _ in mon):
            continue
        coeff = c
        new = []
        for var, exp in mon:
            coeff *= _theta_to_t_factor(var) ** exp
            new.append(((var - 1) // 2, exp))
        key = tuple(sorted(new))
        out[key] = out.get(key, Fraction(0)) + coeff
    return GradedPoly.make("t", out, tau.poly.bound)


def log_series(p: GradedPoly, degree: int | None = None) -> GradedPoly:
    """Exact log of a constant-term-1 graded polynomial, through `degree`."""
    return graded_log(p, degree)


def free_energy(tau: TauSeries) -> GradedPoly:
    """log Z in the coupling constants t."""
    return log_series(to_t_variables(tau))


# ---------------------------------------------------------------------------
# Correlators
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CorrelatorSpec:
    """Multiset of insertion indices k_1 <= ... <= k_n."""

    exponents: tuple[int, ...]

    @classmethod
    def of(cls, ks: tuple[int, ...] | list[int]) -> "CorrelatorSpec":
        ks = tuple(sorted(int(k) for k in ks))
        if any(k < 0 for k in ks):
            raise ValueError("insertion indices must be >= 0")
        return cls(ks)

    @property
    def size(self) -> int:
        return len(self.exponents)

    @property
    def genus(self) -> int | None:
        """g with sum k_i = 3g - 3 + n, or None if no such integer g >= 0."""
        num = sum(self.exponents) - self.size + 3
        if num % 3 != 0 or num < 0:
            return None
        return num // 3

    @property
    def is_valid(self) -> bool:
        return self.genus is not None

    @property
    def t_weight(self) -> int:
        return sum(2 * k + 1 for k in self.exponents)

    def monomial(self) -> Monomial:
        counts: dict[int, int] = {}
        for k in self.exponents:
            counts[k] = counts.get(k, 0) + 1
        return tuple(sorted(counts.items()))

    def multiplicity_factor(self) -> Fraction:
        out = Fraction(1)
        for _, e in self.monomial():
            for i in range(2, e + 1):
                out *= i
        return out

    def __str__(self) -> str:
        return "<" + " ".join(f"tau_{k}" for k in self.exponents) + ">"


@dataclass(frozen=True)
class IntersectionResult:
    value: Fraction
    genus: int | None
    dimension_ok: bool


def intersection_number(
    spec: CorrelatorSpec, tau: TauSeries, F: GradedPoly | None = None
) -> IntersectionResult:
    """Exact correlator for `spec`, with its derived genus.

    A spec that violates the dimension constraint yields value 0 with
    dimension_ok False (this is a structural zero, not an error).
    """
    if F is None:
        F = free_energy(tau)
    if not spec.is_valid:
        return IntersectionResult(Fraction(0), None, False)
    if F.bound is not None and spec.t_weight > F.bound:
        raise DegreeExceededError(
            f"spec {spec} needs degree {spec.t_weight}, free energy reliable to {F.bound}"
        )
    value = F.coefficient(spec.monomial()) * spec.multiplicity_factor()
    return IntersectionResult(value, spec.genus, True)


def _correlator(F: GradedPoly, spec: CorrelatorSpec) -> Fraction:
    return F.coefficient(spec.monomial()) * spec.multiplicity_factor()


# ---------------------------------------------------------------------------
# Differential identities
# ---------------------------------------------------------------------------


def verify_string_equation(tau: TauSeries) -> VerificationReport:
    """Residual of  sum_{p>=1} t_p dZ/dt_{p-1} + (t_0^2/2) Z - dZ/dt_0."""
    suite = "string-equation"
    Z = to_t_variables(tau)
    residual = -Z.derivative(0)
    t0sq = GradedPoly.make("t", {((0, 2),): Fraction(1, 2)}, None)
    residual = residual + t0sq * Z
    for p in range(1, max(Z.variables(), default=0) + 2):
        dz = Z.derivative(p - 1)
        if dz.is_zero() and p - 1 not in Z.variables():
            continue
        tp = GradedPoly.variable("t", p)
        residual = residual + tp * dz
    ok = residual.is_zero()
    failures = []
    if not ok:
        mon = min(residual.terms)
        failures.append(
            f"coefficient {format_rational(residual.terms[mon])} at monomial {mon}"
        )
    return VerificationReport(
        suite, ok, f"residual certified through t-degree {residual.bound}",
        failures=failures, bound=residual.bound,
    )


def verify_kdv_flow(tau: TauSeries, flow: int) -> VerificationReport:
    """Residual of the flow-`flow` equation of the hierarchy on u = d^2 log Z.

    flow 1:  u_{t_1} = u u_x + (1/12) u_xxx.
    flow p>=2:  u_{t_p} = (2u v + u_x w + (1/4) v_xx) / (1 + 2p)  with
    v = u_{t_{p-1}} and w = d_{t_{p-1}} d_{t_0} log Z (so w_x = v).
    """
    suite = f"kdv-flow-{flow}"
    if flow < 1:
        raise ValueError("flow index starts at 1")
    F = free_energy(tau)
    u = F.derivative(0).derivative(0)
    ux = u.derivative(0)
    if flow == 1:
        rhs = u * ux + ux.derivative(0).derivative(0).scale(Fraction(1, 12))
        residual = u.derivative(1) - rhs
    else:
        v = u.derivative(flow - 1)
        w = F.derivative(0).derivative(flow - 1)
        rhs = (u.scale(2) * v + ux * w + v.derivative(0).derivative(0).scale(Fraction(1, 4)))
        residual = u.derivative(flow) - rhs.scale(Fraction(1, 1 + 2 * flow))
    if residual.bound is not None and residual.bound < 1:
        raise DegreeExceededError(
            f"tau degree {tau.degree} leaves no certifiable residual for flow {flow}"
        )
    ok = residual.is_zero()
    failures = []
    if not ok:
        mon = min(residual.terms)
        failures.append(
            f"coefficient {format_rational(residual.terms[mon])} at monomial {mon}"
        )
    return VerificationReport(
        suite, ok, f"residual certified through t-degree {residual.bound}",
        failures=failures, bound=residual.bound,
    )


def verify_dimension_filter(tau: TauSeries) -> VerificationReport:
    """Every monomial of log Z must obey the dimension constraint."""
    suite = "dimension-filter"
    F = free_energy(tau)
    failures = []
    for mon, c in sorted(F.terms.items()):
        ks = []
        for var, exp in mon:
            ks.extend([var] * exp)
        spec = CorrelatorSpec.of(ks)
        if not spec.is_valid:
            failures.append(f"{spec} has coefficient {format_rational(c)}")
            if len(failures) >= 3:
                break
    return VerificationReport(
        suite, not failures, f"all stored monomials through degree {F.bound}", failures=failures
    )


def _specs_with_weight_at_most(budget: int) -> list[tuple[int, ...]]:
    """Nonempty multisets (k_1 <= ... <= k_n) with sum (2 k_i + 1) <= budget."""
    out: list[tuple[int, ...]] = []

    def rec(prefix: tuple[int, ...], low: int, left: int) -> None:
        if prefix:
            out.append(prefix)
        k = low
        while 2 * k + 1 <= left:
            rec(prefix + (k,), k, left - (2 * k + 1))
            k += 1

    rec((), 0, budget)
    return out


def verify_string_recursion(tau: TauSeries) -> VerificationReport:
    """<tau_0 tau_{k_1}..tau_{k_n}> = sum_i <.. tau_{k_i - 1} ..> for every
    spec with some k_i >= 1 whose padded weight fits in the free energy."""
    suite = "string-recursion"
    F = free_energy(tau)
    bound = F.bound if F.bound is not None else tau.degree
    failures = []
    checked = 0
    for ks in _specs_with_weight_at_most(bound - 1):
        if all(k == 0 for k in ks):
            continue
        lhs = _correlator(F, CorrelatorSpec.of(ks + (0,)))
        rhs = Fraction(0)
        for i, k in enumerate(ks):
            if k >= 1:
                rhs += _correlator(F, CorrelatorSpec.of(ks[:i] + (k - 1,) + ks[i + 1:]))
        checked += 1
        if lhs != rhs:
            failures.append(
                f"{CorrelatorSpec.of(ks + (0,))}: {format_rational(lhs)} vs {format_rational(rhs)}"
            )
            if len(failures) >= 3:
                break
    return VerificationReport(
        suite, not failures, f"{checked} specs within t-degree {bound}", failures=failures
    )


# ---------------------------------------------------------------------------
# Initial data
# ---------------------------------------------------------------------------


def initial_data(tau: TauSeries, n_max: int) -> list[Fraction]:
    """Taylor coefficients s_0..s_n_max of u(x) = u|_{t_{>=1}=0} = sum s_n x^n / n!.

    x is identified with t_0.
    """
    F = free_energy(tau)
    u0 = F.drop_variables(lambda var: var >= 1).derivative(0).derivative(0)
    if u0.bound is not None and n_max > u0.bound:
        raise DegreeExceededError(
            f"initial data through x^{n_max} needs tau degree {n_max + 2}, have {tau.degree}"
        )
    out = []
    fact = 1
    for n in range(n_max + 1):
        if n:
            fact *= n
        mon: Monomial = ((0, n),) if n else ()
        out.append(u0.terms.get(mon, Fraction(0)) * fact)
    return out
