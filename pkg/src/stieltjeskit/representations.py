"""Parameterizations of matrix Stieltjes-class functions and their evaluators.

An S-class function (holomorphic off a right ray [alpha, inf), PSD imaginary
part in the upper half-plane, PSD values left of alpha) admits several
equivalent parameterizations; the dual T-class lives on a left ray.  Each is
a small immutable record of matrices plus a :class:`~.matmeasure.MatrixMeasure`,
and evaluation is always a finite atomic sum:

* ``StieltjesPair(alpha, gamma, mu)``:       F(z) = gamma + sum (1+t-a)/(t-z) W
* ``KKPair(alpha, C, eta)``:                 F(z) = C + sum (1+t^2)/(t-z) W
* ``NevanlinnaTriple(A, B, nu)``:            F(z) = A + z B + sum (1+t z)/(t-z) W
* ``S0Measure(alpha, sigma)``:               F(z) = sum 1/(t-z) W
* ``SInfTriple(alpha, D, E, rho)``:          F(z) = -D + (z-a)[E + sum (1+t-a)/(t-z) W]
* ``TPair(beta, gamma, mu)``:                G(z) = -gamma + sum (1+b-t)/(t-z) W
* ``T0Measure(beta, sigma)``:                G(z) = sum 1/(t-z) W
* ``TInfTriple(beta, D, E, rho)``:           G(z) = D + (b-z)[-E + sum (1+b-t)/(t-z) W]

Conversions between them are exact atom-wise reweightings, never numeric
integration.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import (
    DimensionMismatch,
    IllegalConversion,
    NotAnAtom,
    PoleProximity,
    UnsupportedPath,
)
from .matmeasure import (
    EPS_MERGE,
    MatrixMeasure,
    SupportSet,
    as_hermitian,
    as_psd,
    left_ray,
    matrix_from_json,
    matrix_to_json,
    open_left_ray,
    open_right_ray,
    right_ray,
    total_mass,
    whole_line,
)

EPS_NEAR = 1e-9  # evaluation refused within EPS_NEAR*(1+|z|) of the support ray


# ---------------------------------------------------------------------------
# Representation records
# ---------------------------------------------------------------------------


def _require_support(mu: MatrixMeasure, kind: str, endpoint: float, what: str):
    if mu.support.kind != kind or mu.support.endpoint != endpoint:
        raise DimensionMismatch(
            f"{what} must live on {kind}({endpoint}), got "
            f"{mu.support.kind}({mu.support.endpoint})"
        )


@dataclass(frozen=True)
class StieltjesPair:
    """(gamma, mu) with gamma PSD and mu on [alpha, inf)."""

    KIND = "stieltjes_pair"

    alpha: float
    gamma: np.ndarray
    mu: MatrixMeasure

    def __post_init__(self):
        object.__setattr__(self, "alpha", float(self.alpha))
        object.__setattr__(self, "gamma", as_psd(self.gamma))
        if self.gamma.shape != (self.mu.q, self.mu.q):
            raise DimensionMismatch("gamma and mu dimensions differ")
        _require_support(self.mu, "right_ray", self.alpha, "mu")

    @property
    def q(self) -> int:
        return self.mu.q


@dataclass(frozen=True)
class KKPair:
    """(C, eta) with C PSD and eta on [alpha, inf); kernel (1+t^2)/(t-z)."""

    KIND = "kk_pair"

    alpha: float
    C: np.ndarray
    eta: MatrixMeasure

    def __post_init__(self):
        object.__setattr__(self, "alpha", float(self.alpha))
        object.__setattr__(self, "C", as_psd(self.C))
        if self.C.shape != (self.eta.q, self.eta.q):
            raise DimensionMismatch("C and eta dimensions differ")
        _require_support(self.eta, "right_ray", self.alpha, "eta")

    @property
    def q(self) -> int:
        return self.eta.q


@dataclass(frozen=True)
class NevanlinnaTriple:
    """(A, B, nu): A Hermitian, B PSD, nu on the real line."""

    KIND = "nevanlinna"

    A: np.ndarray
    B: np.ndarray
    nu: MatrixMeasure

    def __post_init__(self):
        object.__setattr__(self, "A", as_hermitian(self.A))
        object.__setattr__(self, "B", as_psd(self.B))
        if self.A.shape != (self.nu.q, self.nu.q) or self.B.shape != self.A.shape:
            raise DimensionMismatch("A, B, nu dimensions differ")

    @property
    def q(self) -> int:
        return self.nu.q


@dataclass(frozen=True)
class S0Measure:
    """Plain resolvent transform of a measure on [alpha, inf)."""

    KIND = "s0"

    alpha: float
    sigma: MatrixMeasure

    def __post_init__(self):
        object.__setattr__(self, "alpha", float(self.alpha))
        _require_support(self.sigma, "right_ray", self.alpha, "sigma")

    @property
    def q(self) -> int:
        return self.sigma.q


@dataclass(frozen=True)
class SInfTriple:
    """(D, E, rho) with rho on the open ray (alpha, inf); no atom at alpha."""

    KIND = "sinf_triple"

    alpha: float
    D: np.ndarray
    E: np.ndarray
    rho: MatrixMeasure

    def __post_init__(self):
        object.__setattr__(self, "alpha", float(self.alpha))
        object.__setattr__(self, "D", as_psd(self.D))
        object.__setattr__(self, "E", as_psd(self.E))
        if self.D.shape != (self.rho.q, self.rho.q) or self.E.shape != self.D.shape:
            raise DimensionMismatch("D, E, rho dimensions differ")
        _require_support(self.rho, "open_right_ray", self.alpha, "rho")

    @property
    def q(self) -> int:
        return self.rho.q


@dataclass(frozen=True)
class TPair:
    """(gamma, mu) with gamma PSD and mu on (-inf, beta]; kernel (1+beta-t)/(t-z)."""

    KIND = "t_pair"

    beta: float
    gamma: np.ndarray
    mu: MatrixMeasure

    def __post_init__(self):
        object.__setattr__(self, "beta", float(self.beta))
        object.__setattr__(self, "gamma", as_psd(self.gamma))
        if self.gamma.shape != (self.mu.q, self.mu.q):
            raise DimensionMismatch("gamma and mu dimensions differ")
        _require_support(self.mu, "left_ray", self.beta, "mu")

    @property
    def q(self) -> int:
        return self.mu.q


@dataclass(frozen=True)
class T0Measure:
    KIND = "t0"

    beta: float
    sigma: MatrixMeasure

    def __post_init__(self):
        object.__setattr__(self, "beta", float(self.beta))
        _require_support(self.sigma, "left_ray", self.beta, "sigma")

    @property
    def q(self) -> int:
        return self.sigma.q


@dataclass(frozen=True)
class TInfTriple:
    """(D, E, rho) with rho on the open ray (-inf, beta); no atom at beta."""

    KIND = "tinf_triple"

    beta: float
    D: np.ndarray
    E: np.ndarray
    rho: MatrixMeasure

    def __post_init__(self):
        object.__setattr__(self, "beta", float(self.beta))
        object.__setattr__(self, "D", as_psd(self.D))
        object.__setattr__(self, "E", as_psd(self.E))
        if self.D.shape != (self.rho.q, self.rho.q) or self.E.shape != self.D.shape:
            raise DimensionMismatch("D, E, rho dimensions differ")
        _require_support(self.rho, "open_left_ray", self.beta, "rho")

    @property
    def q(self) -> int:
        return self.rho.q


Representation = (
    StieltjesPair
    | KKPair
    | NevanlinnaTriple
    | S0Measure
    | SInfTriple
    | TPair
    | T0Measure
    | TInfTriple
)

S_SIDE_KINDS = ("stieltjes_pair", "kk_pair", "s0", "sinf_triple")
T_SIDE_KINDS = ("t_pair", "t0", "tinf_triple")


# ---------------------------------------------------------------------------
# Evaluation
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Evaluator:
    """Pure map z -> q x q matrix with a declared excluded set.

    ``excluded=None`` means the map is defined on the whole plane.
    Calling the evaluator enforces the pole-proximity guard; ``raw``
    skips it (used internally for residue limits).
    """

    q: int
    excluded: SupportSet | None
    fn: Callable[[complex], np.ndarray]

    def distance(self, z: complex) -> float:
        return np.inf if self.excluded is None else self.excluded.distance(z)

    def __call__(self, z: complex) -> np.ndarray:
        z = complex(z)
        if self.distance(z) < EPS_NEAR * (1.0 + abs(z)):
            raise PoleProximity(f"z = {z} is within tolerance of the excluded set")
        return self.fn(z)

    def raw(self, z: complex) -> np.ndarray:
        return self.fn(complex(z))


def _atomic_sum(mu: MatrixMeasure, coeff: np.ndarray, z: complex) -> np.ndarray:
    """sum coeff_k / (t_k - z) * W_k over the atoms of mu."""
    out = np.zeros((mu.q, mu.q), dtype=complex)
    if not mu.atoms:
        return out
    t = mu.nodes
    factors = coeff / (t - z)
    W = mu.weights
    return np.tensordot(factors, W, axes=(0, 0))


def _pair_fn(repr_: StieltjesPair) -> Callable[[complex], np.ndarray]:
    coeff = 1.0 + repr_.mu.nodes - repr_.alpha

    def fn(z: complex) -> np.ndarray:
        return repr_.gamma + _atomic_sum(repr_.mu, coeff, z)

    return fn


def _kk_fn(repr_: KKPair) -> Callable[[complex], np.ndarray]:
    coeff = 1.0 + repr_.eta.nodes**2

    def fn(z: complex) -> np.ndarray:
        return repr_.C + _atomic_sum(repr_.eta, coeff, z)

    return fn


def _nev_fn(repr_: NevanlinnaTriple) -> Callable[[complex], np.ndarray]:
    t = repr_.nu.nodes

    def fn(z: complex) -> np.ndarray:
        return repr_.A + z * repr_.B + _atomic_sum(repr_.nu, 1.0 + t * z, z)

    return fn


def _s0_fn(repr_: S0Measure) -> Callable[[complex], np.ndarray]:
    ones = np.ones_like(repr_.sigma.nodes)

    def fn(z: complex) -> np.ndarray:
        return _atomic_sum(repr_.sigma, ones, z)

    return fn


def _sinf_fn(repr_: SInfTriple) -> Callable[[complex], np.ndarray]:
    coeff = 1.0 + repr_.rho.nodes - repr_.alpha

    def fn(z: complex) -> np.ndarray:
        inner = repr_.E + _atomic_sum(repr_.rho, coeff, z)
        return -repr_.D + (z - repr_.alpha) * inner

    return fn


def _tpair_fn(repr_: TPair) -> Callable[[complex], np.ndarray]:
    coeff = 1.0 + repr_.beta - repr_.mu.nodes

    def fn(z: complex) -> np.ndarray:
        return -repr_.gamma + _atomic_sum(repr_.mu, coeff, z)

    return fn


def _t0_fn(repr_: T0Measure) -> Callable[[complex], np.ndarray]:
    ones = np.ones_like(repr_.sigma.nodes)

    def fn(z: complex) -> np.ndarray:
        return _atomic_sum(repr_.sigma, ones, z)

    return fn


def _tinf_fn(repr_: TInfTriple) -> Callable[[complex], np.ndarray]:
    coeff = 1.0 + repr_.beta - repr_.rho.nodes

    def fn(z: complex) -> np.ndarray:
        inner = -repr_.E + _atomic_sum(repr_.rho, coeff, z)
        return repr_.D + (repr_.beta - z) * inner

    return fn


_FN_FACTORY = {
    "stieltjes_pair": _pair_fn,
    "kk_pair": _kk_fn,
    "nevanlinna": _nev_fn,
    "s0": _s0_fn,
    "sinf_triple": _sinf_fn,
    "t_pair": _tpair_fn,
    "t0": _t0_fn,
    "tinf_triple": _tinf_fn,
}


def excluded_set(repr_: Representation) -> SupportSet | None:
    kind = repr_.KIND
    if kind in ("stieltjes_pair", "kk_pair", "s0", "sinf_triple"):
        return right_ray(repr_.alpha)
    if kind in ("t_pair", "t0", "tinf_triple"):
        return left_ray(repr_.beta)
    # Nevanlinna: holomorphic off the support of nu; when the measure lives
    # on a right ray we exclude that ray (conservative), otherwise the line.
    if repr_.nu.is_zero():
        return None
    nodes = repr_.nu.nodes
    if repr_.nu.support.kind == "line":
        return right_ray(float(nodes.min()))
    return repr_.nu.support


def evaluator(repr_: Representation) -> Evaluator:
    """Build the pure evaluator of a representation."""
    return Evaluator(repr_.q, excluded_set(repr_), _FN_FACTORY[repr_.KIND](repr_))


def evaluate(repr_: Representation, z: complex) -> np.ndarray:
    return evaluator(repr_)(z)


def evaluate_raw(repr_: Representation, z: complex) -> np.ndarray:
    """Evaluate without the pole-proximity guard."""
    return _FN_FACTORY[repr_.KIND](repr_)(complex(z))


def eval_mulz(repr_: StieltjesPair, z: complex) -> np.ndarray:
    """(z - alpha) * F(z), the product transform of a pair."""
    if repr_.KIND != "stieltjes_pair":
        raise DimensionMismatch("eval_mulz is defined for StieltjesPair only")
    return (complex(z) - repr_.alpha) * evaluate(repr_, z)


def mulz_evaluator(F: Evaluator, endpoint: float) -> Evaluator:
    """Evaluator of z -> (z - endpoint) * F(z)."""
    return Evaluator(F.q, F.excluded, lambda z: (z - endpoint) * F.fn(z))


def im_re_parts(repr_: StieltjesPair, z: complex) -> tuple[np.ndarray, np.ndarray]:
    """Closed-form (Re F(z), Im F(z)) of a pair via atomic sums.

    Re F(z) = gamma + sum (1+t-a)(t - Re z)/|t-z|^2 W
    Im F(z) = (Im z) * sum (1+t-a)/|t-z|^2 W
    """
    z = complex(z)
    ev = evaluator(repr_)
    if ev.distance(z) < EPS_NEAR * (1.0 + abs(z)):
        raise PoleProximity(f"z = {z} is within tolerance of the support ray")
    q = repr_.q
    re = np.array(repr_.gamma, dtype=complex)
    im = np.zeros((q, q), dtype=complex)
    for t, W in repr_.mu.atoms:
        k = 1.0 + t - repr_.alpha
        d2 = abs(t - z) ** 2
        re = re + (k * (t - z.real) / d2) * W
        im = im + (k / d2) * W
    return re, z.imag * im


def im_mulz_closed(repr_: StieltjesPair, z: complex) -> np.ndarray:
    """Closed form of Im[(z-a)F(z)] for a pair:

    Im F_mul(z) = (Im z) * [gamma + sum (1+t-a)(t-a)/|t-z|^2 W]
    """
    z = complex(z)
    out = np.array(repr_.gamma, dtype=complex)
    for t, W in repr_.mu.atoms:
        out = out + ((1.0 + t - repr_.alpha) * (t - repr_.alpha) / abs(t - z) ** 2) * W
    return z.imag * out


# ---------------------------------------------------------------------------
# Conversions (exact atom-wise reweightings)
# ---------------------------------------------------------------------------


def _reweight(mu: MatrixMeasure, factor: Callable[[float], float], support=None) -> MatrixMeasure:
    atoms = [(t, factor(t) * W) for t, W in mu.atoms]
    return MatrixMeasure(mu.q, support if support is not None else mu.support, atoms)


def _is_zero_matrix(M: np.ndarray) -> bool:
    return float(np.linalg.norm(M)) <= 1e-13


def _pair_to_kk(p: StieltjesPair) -> KKPair:
    a = p.alpha
    eta = _reweight(p.mu, lambda t: (1.0 + t - a) / (1.0 + t * t))
    return KKPair(a, p.gamma, eta)


def _kk_to_pair(k: KKPair) -> StieltjesPair:
    a = k.alpha
    mu = _reweight(k.eta, lambda t: (1.0 + t * t) / (1.0 + t - a))
    return StieltjesPair(a, k.C, mu)


def _kk_to_nev(k: KKPair) -> NevanlinnaTriple:
    # A = C + integral of t deta; B = 0; nu = eta extended by zero to R.
    first = np.zeros((k.q, k.q), dtype=complex)
    for t, W in k.eta.atoms:
        first += t * W
    A = k.C + first
    nu = MatrixMeasure(k.q, whole_line(), k.eta.atoms)
    return NevanlinnaTriple(A, np.zeros((k.q, k.q)), nu)


def _nev_to_kk(n: NevanlinnaTriple, alpha: float | None) -> KKPair:
    if not _is_zero_matrix(n.B):
        raise IllegalConversion("triple has B != 0; not a right-ray restriction")
    nodes = n.nu.nodes
    if alpha is None:
        alpha = float(nodes.min()) if nodes.size else 0.0
    if nodes.size and float(nodes.min()) < alpha:
        raise IllegalConversion(f"nu carries mass below alpha = {alpha}")
    first = np.zeros((n.q, n.q), dtype=complex)
    for t, W in n.nu.atoms:
        first += t * W
    C = as_psd(n.A - first)
    eta = MatrixMeasure(n.q, right_ray(alpha), n.nu.atoms)
    return KKPair(alpha, C, eta)


def _pair_to_s0(p: StieltjesPair) -> S0Measure:
    if np.any(np.abs(p.gamma) > 1e-13 * (1.0 + np.linalg.norm(p.gamma))):
        raise IllegalConversion("gamma != 0: the function has a nonzero limit at i*inf")
    a = p.alpha
    sigma = _reweight(p.mu, lambda t: 1.0 + t - a)
    return S0Measure(a, sigma)


def _s0_to_pair(s: S0Measure) -> StieltjesPair:
    a = s.alpha
    mu = _reweight(s.sigma, lambda t: 1.0 / (1.0 + t - a))
    return StieltjesPair(a, np.zeros((s.q, s.q)), mu)


def _split_endpoint_atom(mu: MatrixMeasure, endpoint: float):
    """Return (weight at endpoint or zero, remaining atoms)."""
    q = mu.q
    at = np.zeros((q, q), dtype=complex)
    rest = []
    for t, W in mu.atoms:
        if abs(t - endpoint) <= 10 * EPS_MERGE * (1.0 + abs(endpoint)):
            at = at + W
        else:
            rest.append((t, W))
    return at, rest


def _sinf_to_pair(s: SInfTriple) -> StieltjesPair:
    """Pair of P(z) = (z - alpha)^{-1} F(z): gamma_P = E, mu_P = rho + delta_alpha D."""
    atoms = [(s.alpha, s.D)] + list(s.rho.atoms)
    mu = MatrixMeasure(s.q, right_ray(s.alpha), atoms)
    return StieltjesPair(s.alpha, s.E, mu)


def _pair_to_sinf(p: StieltjesPair) -> SInfTriple:
    """Inverse of the split: F(z) = (z - alpha) P(z) from the pair of P."""
    D, rest = _split_endpoint_atom(p.mu, p.alpha)
    rho = MatrixMeasure(p.q, open_right_ray(p.alpha), rest)
    return SInfTriple(p.alpha, D, p.gamma, rho)


def _tpair_to_t0(p: TPair) -> T0Measure:
    if np.any(np.abs(p.gamma) > 1e-13 * (1.0 + np.linalg.norm(p.gamma))):
        raise IllegalConversion("gamma != 0: the function has a nonzero limit at i*inf")
    b = p.beta
    sigma = _reweight(p.mu, lambda t: 1.0 + b - t)
    return T0Measure(b, sigma)


def _t0_to_tpair(s: T0Measure) -> TPair:
    b = s.beta
    mu = _reweight(s.sigma, lambda t: 1.0 / (1.0 + b - t))
    return TPair(b, np.zeros((s.q, s.q)), mu)


def _tinf_to_tpair(s: TInfTriple) -> TPair:
    """Pair of Q(z) = (beta - z)^{-1} G(z): gamma_Q = E, mu_Q = rho + delta_beta D."""
    atoms = [(s.beta, s.D)] + list(s.rho.atoms)
    mu = MatrixMeasure(s.q, left_ray(s.beta), atoms)
    return TPair(s.beta, s.E, mu)


def _tpair_to_tinf(p: TPair) -> TInfTriple:
    D, rest = _split_endpoint_atom(p.mu, p.beta)
    rho = MatrixMeasure(p.q, open_left_ray(p.beta), rest)
    return TInfTriple(p.beta, D, p.gamma, rho)


_CONVERTERS = {
    ("stieltjes_pair", "kk_pair"): lambda r, a: _pair_to_kk(r),
    ("kk_pair", "stieltjes_pair"): lambda r, a: _kk_to_pair(r),
    ("kk_pair", "nevanlinna"): lambda r, a: _kk_to_nev(r),
    ("nevanlinna", "kk_pair"): _nev_to_kk,
    ("stieltjes_pair", "s0"): lambda r, a: _pair_to_s0(r),
    ("s0", "stieltjes_pair"): lambda r, a: _s0_to_pair(r),
    ("sinf_triple", "stieltjes_pair"): lambda r, a: _sinf_to_pair(r),
    ("stieltjes_pair", "sinf_triple"): lambda r, a: _pair_to_sinf(r),
    ("t_pair", "t0"): lambda r, a: _tpair_to_t0(r),
    ("t0", "t_pair"): lambda r, a: _t0_to_tpair(r),
    ("tinf_triple", "t_pair"): lambda r, a: _tinf_to_tpair(r),
    ("t_pair", "tinf_triple"): lambda r, a: _tpair_to_tinf(r),
}


def convert(repr_: Representation, target_kind: str, alpha: float | None = None) -> Representation:
    """Convert a representation to another kind.

    Only the directly supported paths are implemented; unlisted pairs raise
    ``UnsupportedPath`` (compose via the listed ones).  Note that the
    sinf_triple <-> stieltjes_pair and tinf_triple <-> t_pair paths change
    the represented function by the factor (z - alpha) resp. (beta - z).
    """
    key = (repr_.KIND, target_kind)
    if key[0] == key[1]:
        return repr_
    fn = _CONVERTERS.get(key)
    if fn is None:
        raise UnsupportedPath(f"no direct conversion {key[0]} -> {target_kind}")
    return fn(repr_, alpha)


# ---------------------------------------------------------------------------
# Residues
# ---------------------------------------------------------------------------


def residue_weight(repr_: Representation, t0: float, verify: bool = False) -> np.ndarray:
    """Mass recovered from the pole at an atom t0.

    For a pair this is (1 + t0 - alpha) W0 (the kernel numerator at the
    node); for an S0/T0 measure it is W0 itself.  With ``verify=True`` the
    analytic value is cross-checked against the numeric limit of
    (t0 - z) F(z) along z = t0 + i 2^{-k}.
    """
    kind = repr_.KIND
    if kind == "stieltjes_pair":
        mu, factor = repr_.mu, lambda t: 1.0 + t - repr_.alpha
    elif kind == "s0":
        mu, factor = repr_.sigma, lambda t: 1.0
    elif kind == "t_pair":
        mu, factor = repr_.mu, lambda t: 1.0 + repr_.beta - t
    elif kind == "t0":
        mu, factor = repr_.sigma, lambda t: 1.0
    else:
        raise UnsupportedPath(f"residue_weight not defined for kind {kind}")

    hit = None
    for t, W in mu.atoms:
        if abs(t - t0) <= 10 * EPS_MERGE * (1.0 + abs(t0)):
            hit = (t, W)
            break
    if hit is None:
        raise NotAnAtom(f"no atom within tolerance of t0 = {t0}")
    t, W = hit
    value = factor(t) * W
    if verify:
        eps = 2.0**-26
        approx = (-1j * eps) * evaluate_raw(repr_, t + 1j * eps)
        err = np.linalg.norm(approx - value)
        if err > 1e-6 * (1.0 + np.linalg.norm(value)):
            raise NotAnAtom(f"numeric residue check failed: |diff| = {err:.3e}")
    return value


# ---------------------------------------------------------------------------
# JSON serialization
# ---------------------------------------------------------------------------


def repr_to_json(repr_: Representation) -> dict:
    kind = repr_.KIND
    if kind == "stieltjes_pair":
        return {"kind": kind, "alpha": repr_.alpha, "gamma": matrix_to_json(repr_.gamma), "mu": repr_.mu.to_json()}
    if kind == "kk_pair":
        return {"kind": kind, "alpha": repr_.alpha, "C": matrix_to_json(repr_.C), "eta": repr_.eta.to_json()}
    if kind == "nevanlinna":
        return {"kind": kind, "A": matrix_to_json(repr_.A), "B": matrix_to_json(repr_.B), "nu": repr_.nu.to_json()}
    if kind == "s0":
        return {"kind": kind, "alpha": repr_.alpha, "sigma": repr_.sigma.to_json()}
    if kind == "sinf_triple":
        return {
            "kind": kind,
            "alpha": repr_.alpha,
            "D": matrix_to_json(repr_.D),
            "E": matrix_to_json(repr_.E),
            "rho": repr_.rho.to_json(),
        }
    if kind == "t_pair":
        return {"kind": kind, "beta": repr_.beta, "gamma": matrix_to_json(repr_.gamma), "mu": repr_.mu.to_json()}
    if kind == "t0":
        return {"kind": kind, "beta": repr_.beta, "sigma": repr_.sigma.to_json()}
    if kind == "tinf_triple":
        return {
            "kind": kind,
            "beta": repr_.beta,
            "D": matrix_to_json(repr_.D),
            "E": matrix_to_json(repr_.E),
            "rho": repr_.rho.to_json(),
        }
    raise UnsupportedPath(f"unknown kind {kind}")


def repr_from_json(obj: dict) -> Representation:
    kind = obj["kind"]
    M = MatrixMeasure.from_json
    if kind == "stieltjes_pair":
        return StieltjesPair(obj["alpha"], matrix_from_json(obj["gamma"]), M(obj["mu"]))
    if kind == "kk_pair":
        return KKPair(obj["alpha"], matrix_from_json(obj["C"]), M(obj["eta"]))
    if kind == "nevanlinna":
        return NevanlinnaTriple(matrix_from_json(obj["A"]), matrix_from_json(obj["B"]), M(obj["nu"]))
    if kind == "s0":
        return S0Measure(obj["alpha"], M(obj["sigma"]))
    if kind == "sinf_triple":
        return SInfTriple(obj["alpha"], matrix_from_json(obj["D"]), matrix_from_json(obj["E"]), M(obj["rho"]))
    if kind == "t_pair":
        return TPair(obj["beta"], matrix_from_json(obj["gamma"]), M(obj["mu"]))
    if kind == "t0":
        return T0Measure(obj["beta"], M(obj["sigma"]))
    if kind == "tinf_triple":
        return TInfTriple(obj["beta"], matrix_from_json(obj["D"]), matrix_from_json(obj["E"]), M(obj["rho"]))
    raise UnsupportedPath(f"unknown kind {kind}")
