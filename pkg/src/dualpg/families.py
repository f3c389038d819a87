"""Built-in manufactured-solution families.

Each family carries a closed-form exact solution whose derivatives (up to
order five) are differentiated analytically: solutions are finite sums of
polynomial * {sin, cos} or polynomial * {sinh, cosh} terms, a class closed
under d/dx, so right-hand sides are exact and convergence tables are never
polluted by differentiation error.

  family 1 (order 3): u = (1 - x^2) x^j sin(m pi x), integer j, m >= 1;
                      homogeneous data u(+-1) = u'(1) = 0
  family 2 (order 5): u = (1 - x^2)^2 (1 - x) cosh(m x), real m;
                      homogeneous data u(+-1) = u'(+-1) = u''(1) = 0
  family 3 (order 3): u = sinh(m x), real m; nonhomogeneous data
                      u(+-1) = +-sinh m, u'(1) = m cosh m
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .assembly import FifthOrderBC, FifthOrderProblem, ThirdOrderBC, ThirdOrderProblem

__all__ = ["TrigPolySum", "ExampleFamily", "make_family"]

_P = np.polynomial.polynomial


@dataclass(frozen=True)
class TrigPolySum:
    """sum over kernels of p_kernel(x) * kernel(omega x), closed under d/dx."""

    omega: float
    terms: tuple[tuple[str, tuple[float, ...]], ...]

    def __call__(self, x):
        arr = np.asarray(x, dtype=float)
        kernels = {"sin": np.sin, "cos": np.cos, "sinh": np.sinh, "cosh": np.cosh}
        total = np.zeros(arr.shape)
        for kernel, coeffs in self.terms:
            total = total + _P.polyval(arr, np.asarray(coeffs)) * kernels[kernel](
                self.omega * arr
            )
        return float(total) if arr.ndim == 0 else total

    def derivative(self) -> "TrigPolySum":
        partner = {"sin": ("cos", 1.0), "cos": ("sin", -1.0),
                   "sinh": ("cosh", 1.0), "cosh": ("sinh", 1.0)}
        acc: dict[str, np.ndarray] = {}

        def push(kernel: str, coeffs: np.ndarray) -> None:
            if kernel in acc:
                size = max(len(acc[kernel]), len(coeffs))
                merged = np.zeros(size)
                merged[: len(acc[kernel])] += acc[kernel]
                merged[: len(coeffs)] += coeffs
                acc[kernel] = merged
            else:
                acc[kernel] = np.asarray(coeffs, dtype=float)

        for kernel, coeffs in self.terms:
            poly = np.asarray(coeffs, dtype=float)
            if len(poly) > 1:
                push(kernel, _P.polyder(poly))
            other, sign = partner[kernel]
            push(other, sign * self.omega * poly)
        terms = tuple(
            (kernel, tuple(c)) for kernel, c in sorted(acc.items()) if np.any(c)
        )
        return TrigPolySum(omega=self.omega, terms=terms)


@dataclass(frozen=True)
class ExampleFamily:
    """A manufactured solution with exact derivatives and boundary data."""

    family_id: int
    order: int
    exact: TrigPolySum
    derivatives: tuple[TrigPolySum, ...]  # exact, u', ..., u^(5)
    label: str
    homogeneous: bool = False  # boundary data vanishes structurally

    def derivative(self, q: int) -> TrigPolySum:
        return self.derivatives[q]

    def rhs_third(self, coefficients):
        a1, b1, g1 = coefficients
        d = self.derivatives

        def rhs(x):
            return d[3](x) - a1 * d[2](x) - b1 * d[1](x) + g1 * d[0](x)

        return rhs

    def rhs_fifth(self, coefficients):
        a2, b2, g2, d2, m2 = coefficients
        d = self.derivatives

        def rhs(x):
            return (-d[5](x) + a2 * d[4](x) + b2 * d[3](x)
                    - g2 * d[2](x) - d2 * d[1](x) + m2 * d[0](x))

        return rhs

    def bc_third(self) -> ThirdOrderBC:
        if self.homogeneous:
            # exact zeros: evaluating sin(m pi) etc. would leave roundoff
            return ThirdOrderBC()
        return ThirdOrderBC(
            a_minus=self.exact(-1.0),
            a_plus=self.exact(1.0),
            a1_plus=self.derivatives[1](1.0),
        )

    def bc_fifth(self) -> FifthOrderBC:
        if self.homogeneous:
            return FifthOrderBC()
        return FifthOrderBC(
            a_minus=self.exact(-1.0),
            a_plus=self.exact(1.0),
            a1_minus=self.derivatives[1](-1.0),
            a1_plus=self.derivatives[1](1.0),
            a2_plus=self.derivatives[2](1.0),
        )

    def third_order_problem(self, coefficients) -> ThirdOrderProblem:
        if self.order != 3:
            raise ValueError(f"family {self.family_id} is not a third-order family")
        a1, b1, g1 = coefficients
        return ThirdOrderProblem(
            alpha1=a1, beta1=b1, gamma1=g1,
            rhs=self.rhs_third(coefficients), bc=self.bc_third(),
        )

    def fifth_order_problem(self, coefficients) -> FifthOrderProblem:
        if self.order != 5:
            raise ValueError(f"family {self.family_id} is not a fifth-order family")
        a2, b2, g2, d2, m2 = coefficients
        return FifthOrderProblem(
            alpha2=a2, beta2=b2, gamma2=g2, delta2=d2, mu2=m2,
            rhs=self.rhs_fifth(coefficients), bc=self.bc_fifth(),
        )


def _with_derivatives(
    family_id: int, order: int, u: TrigPolySum, label: str, homogeneous: bool = False
) -> ExampleFamily:
    chain = [u]
    for _ in range(5):
        chain.append(chain[-1].derivative())
    return ExampleFamily(
        family_id=family_id, order=order, exact=u,
        derivatives=tuple(chain), label=label, homogeneous=homogeneous,
    )


def make_family(family_id: int, j: int | None = None, m: float | None = None) -> ExampleFamily:
    """Construct one of the three built-in families."""
    if family_id == 1:
        j = 1 if j is None else j
        m = 1 if m is None else m
        if j < 0 or int(j) != j:
            raise ValueError("family 1 needs an integer j >= 0")
        if m <= 0 or float(m) != int(m):
            raise ValueError("family 1 needs an integer m >= 1 (homogeneous data)")
        j = int(j)
        poly = np.zeros(j + 3)
        poly[j] = 1.0
        poly[j + 2] = -1.0  # (1 - x^2) x^j
        u = TrigPolySum(omega=int(m) * np.pi, terms=(("sin", tuple(poly)),))
        return _with_derivatives(
            1, 3, u, f"(1-x^2) x^{j} sin({int(m)} pi x)", homogeneous=True
        )
    if family_id == 2:
        m = 1.0 if m is None else float(m)
        poly = (1.0, -1.0, -2.0, 2.0, 1.0, -1.0)  # (1-x^2)^2 (1-x)
        u = TrigPolySum(omega=m, terms=(("cosh", poly),))
        return _with_derivatives(
            2, 5, u, f"(1-x^2)^2 (1-x) cosh({m} x)", homogeneous=True
        )
    if family_id == 3:
        m = 1.0 if m is None else float(m)
        u = TrigPolySum(omega=m, terms=(("sinh", (1.0,)),))
        return _with_derivatives(3, 3, u, f"sinh({m} x)")
    raise ValueError(f"family_id must be 1, 2 or 3, got {family_id}")
