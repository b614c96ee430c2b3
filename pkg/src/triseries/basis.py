"""Classical Laguerre / Jacobi polynomials and the weighted basis elements.

The expansion bases are
    Laguerre:  phi_n(x) = c_n x^alpha e^{-beta x} L_n^nu(x),
               c_n = sqrt(Gamma(n+1)/Gamma(n+nu+1)),    x >= 0,
    Jacobi:    phi_n(x) = c_n (1-x)^alpha (1+x)^beta P_n^{(mu,nu)}(x),
               c_n = sqrt((2n+mu+nu+1)/2^{mu+nu+1}
                          * Gamma(n+1)Gamma(n+mu+nu+1)
                          / (Gamma(n+mu+1)Gamma(n+nu+1))),  -1 <= x <= 1.

Negative integer indices nu = -N-1 (Laguerre) / mu = -N-1 (Jacobi) are legal
for degrees n <= N only; their normalization drops an n-independent singular
Gamma factor, i.e. is fixed up to overall scale.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import DomainError, IndexOutOfValidity
from .gammafn import log_gamma_real, pochhammer_real


def _is_negative_integer_leq(v: float, bound: float = -1.0) -> bool:
    return v <= bound + 1e-12 and abs(v - round(v)) < 1e-12


def _check_negative_index(param: float, n: int, label: str) -> None:
    if _is_negative_integer_leq(param):
        n_cap = int(round(-param)) - 1  # param = -N-1 allows n <= N
        if n > n_cap:
            raise IndexOutOfValidity(
                f"{label} = {param} only valid for degrees n <= {n_cap}, got {n}"
            )


def laguerre(n: int, nu: float, x: float) -> float:
    """Classical (unnormalized) Laguerre polynomial L_n^nu(x) by recursion."""
    if n < 0:
        raise ValueError("degree must be >= 0")
    _check_negative_index(nu, n, "Laguerre index nu")
    if n == 0:
        return 1.0
    prev = 1.0
    cur = nu + 1.0 - x
    for k in range(1, n):
        prev, cur = cur, ((2 * k + nu + 1.0 - x) * cur - (k + nu) * prev) / (k + 1.0)
    return cur


def jacobi(n: int, mu: float, nu: float, x: float) -> float:
    """Classical (unnormalized) Jacobi polynomial P_n^{(mu,nu)}(x) by recursion."""
    if n < 0:
        raise ValueError("degree must be >= 0")
    _check_negative_index(mu, n, "Jacobi index mu")
    _check_negative_index(nu, n, "Jacobi index nu")
    if n == 0:
        return 1.0
    prev = 1.0
    cur = 0.5 * (mu + nu + 2.0) * x + 0.5 * (mu - nu)
    for k in range(1, n):
        c = 2 * k + mu + nu
        a1 = 2.0 * (k + 1.0) * (k + mu + nu + 1.0) * c
        a2 = (c + 1.0) * (mu * mu - nu * nu)
        a3 = (c + 1.0) * c * (c + 2.0)
        a4 = 2.0 * (k + mu) * (k + nu) * (c + 2.0)
        if a1 == 0.0:
            raise IndexOutOfValidity(
                f"Jacobi recursion degenerate at degree {k + 1} for mu={mu}, nu={nu}"
            )
        prev, cur = cur, ((a2 + a3 * x) * cur - a4 * prev) / a1
    return cur


def jacobi_orthonormal_coeffs(mu: float, nu: float, n_terms: int):
    """(s_n, t_n) of the orthonormal Jacobi three-term recursion.

    s_n = C_n = (nu^2 - mu^2) / ((2n+mu+nu)(2n+mu+nu+2)),
    t_n = D_n = 2/(2n+mu+nu+2) sqrt((n+1)(n+mu+1)(n+nu+1)(n+mu+nu+1)
                                     / ((2n+mu+nu+1)(2n+mu+nu+3))).
    These are the z -> infinity limit coefficients of the extended family
    built on the same C_n, D_n.
    """
    s = np.array([jacobi_c(n, mu, nu) for n in range(n_terms)])
    t = np.array([jacobi_d(n, mu, nu) for n in range(n_terms)])
    return s, t


def jacobi_c(n: int, mu: float, nu: float) -> float:
    """C_n = (nu^2 - mu^2)/((2n+mu+nu)(2n+mu+nu+2)), with the n=0 cancellation."""
    if n == 0:
        # (nu-mu)(nu+mu)/((mu+nu)(mu+nu+2)) -> (nu-mu)/(mu+nu+2), valid as mu+nu -> 0
        return (nu - mu) / (mu + nu + 2.0)
    d1 = 2 * n + mu + nu
    d2 = d1 + 2.0
    return (nu * nu - mu * mu) / (d1 * d2)


def jacobi_d(n: int, mu: float, nu: float) -> float:
    """D_n, the orthonormal Jacobi off-diagonal; NaN-free only while real."""
    arg = ((n + 1.0) * (n + mu + 1.0) * (n + nu + 1.0) * (n + mu + nu + 1.0)
           / ((2 * n + mu + nu + 1.0) * (2 * n + mu + nu + 3.0)))
    return 2.0 / (2 * n + mu + nu + 2.0) * math.copysign(math.sqrt(abs(arg)), 1.0) \
        if arg >= 0 else float("nan")


def jacobi_d_squared(n: int, mu: float, nu: float) -> float:
    """Signed square of D_n (negative in the formal finite cases)."""
    arg = ((n + 1.0) * (n + mu + 1.0) * (n + nu + 1.0) * (n + mu + nu + 1.0)
           / ((2 * n + mu + nu + 1.0) * (2 * n + mu + nu + 3.0)))
    return (2.0 / (2 * n + mu + nu + 2.0)) ** 2 * arg


def laguerre_norm(n: int, nu: float) -> float:
    """c_n = sqrt(Gamma(n+1)/Gamma(n+nu+1)).

    For nu = -N-1 (negative integer) the Gamma ratio degenerates; the
    n-independent Gamma(nu+1) is dropped, giving c_n = sqrt(n!/|(nu+1)_n|),
    which fixes the basis up to one overall constant.
    """
    if _is_negative_integer_leq(nu):
        _check_negative_index(nu, n, "Laguerre index nu")
        poch = pochhammer_real(nu + 1.0, n)
        if n == 0:
            return 1.0
        return math.sqrt(math.exp(log_gamma_real(n + 1.0)) / abs(poch))
    return math.exp(0.5 * (log_gamma_real(n + 1.0) - log_gamma_real(n + nu + 1.0)))


def jacobi_norm(n: int, mu: float, nu: float) -> float:
    """c_n of the Jacobi basis element; negative-integer mu or nu handled as
    in ``laguerre_norm`` (singular n-independent factor dropped)."""
    lead = (2 * n + mu + nu + 1.0) / 2.0 ** (mu + nu + 1.0)
    if lead <= 0:
        raise IndexOutOfValidity(f"nonpositive leading norm factor at n={n}")
    neg_mu = _is_negative_integer_leq(mu)
    neg_nu = _is_negative_integer_leq(nu)
    if neg_mu or neg_nu:
        _check_negative_index(mu, n, "Jacobi index mu")
        _check_negative_index(nu, n, "Jacobi index nu")
        # Gamma(n+a+1)/Gamma(a+1) = (a+1)_n keeps ratios finite for n <= N.
        num = math.exp(log_gamma_real(n + 1.0)) * abs(pochhammer_real(mu + nu + 1.0, n)) \
            if not _is_negative_integer_leq(mu + nu + 1.0, 0.0) else math.exp(
                log_gamma_real(n + 1.0))
        den = abs(pochhammer_real(mu + 1.0, n)) * abs(pochhammer_real(nu + 1.0, n))
        if den == 0.0:
            raise IndexOutOfValidity(f"Jacobi norm degenerate at n={n}")
        return math.sqrt(lead * num / den)
    val = (log_gamma_real(n + 1.0) + log_gamma_real(n + mu + nu + 1.0)
           - log_gamma_real(n + mu + 1.0) - log_gamma_real(n + nu + 1.0))
    return math.sqrt(lead) * math.exp(0.5 * val)


class BasisKind:
    LAGUERRE = "laguerre"
    JACOBI = "jacobi"


def basis_element(spec, n: int, x: float) -> float:
    """Evaluate the normalized basis element phi_n(x) for a BasisSpec.

    ``spec`` needs attributes equation ("laguerre"|"jacobi"), alpha, beta,
    nu (and mu for Jacobi).
    """
    if spec.equation == BasisKind.LAGUERRE:
        if x < 0:
            raise DomainError(f"Laguerre basis needs x >= 0, got {x}")
        cn = laguerre_norm(n, spec.nu)
        power = x ** spec.alpha if x > 0 else (1.0 if spec.alpha == 0 else 0.0)
        return cn * power * math.exp(-spec.beta * x) * laguerre(n, spec.nu, x)
    if spec.equation == BasisKind.JACOBI:
        if not -1.0 <= x <= 1.0:
            raise DomainError(f"Jacobi basis needs -1 <= x <= 1, got {x}")
        cn = jacobi_norm(n, spec.mu, spec.nu)
        om = 1.0 - x
        op = 1.0 + x
        pow_m = om ** spec.alpha if om > 0 else (1.0 if spec.alpha == 0 else 0.0)
        pow_p = op ** spec.beta if op > 0 else (1.0 if spec.beta == 0 else 0.0)
        return cn * pow_m * pow_p * jacobi(n, spec.mu, spec.nu, x)
    raise ValueError(f"unknown basis equation {spec.equation!r}")
