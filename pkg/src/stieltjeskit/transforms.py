"""Moore-Penrose machinery and class-preserving maps.

The pseudoinverse maps return lazy :class:`~.representations.Evaluator`
objects (no closed-form parameters exist for their measures); the duality
reflection, congruence sums, constant shifts, direct sums, and transposes
act on representations and return representations with exactly mapped
parameters.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .classifier import rank_constancy, sample_points
from .errors import DimensionMismatch, ShiftNotPsd, UnsupportedKind
from .matmeasure import MatrixMeasure, as_hermitian, image_measure, is_psd
from .representations import (
    Evaluator,
    Representation,
    KKPair,
    NevanlinnaTriple,
    S0Measure,
    SInfTriple,
    StieltjesPair,
    T0Measure,
    TInfTriple,
    TPair,
    evaluator,
)

PINV_RTOL_FACTOR = 1e-12  # default rtol = 1e-12 * q


@dataclass(frozen=True)
class PinvResult:
    pinv: np.ndarray
    rank: int
    singular_values: np.ndarray


def pinv(M, rtol: float | None = None) -> PinvResult:
    """SVD pseudoinverse with a relative singular-value cutoff.

    Singular values below rtol * sigma_1 are treated as zero; the default
    rtol is 1e-12 * q.  The four Penrose identities hold for the result.
    """
    M = np.asarray(M, dtype=complex)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {M.shape}")
    q = M.shape[0]
    if rtol is None:
        rtol = PINV_RTOL_FACTOR * q
    U, s, Vh = np.linalg.svd(M)
    s1 = float(s[0]) if s.size else 0.0
    if s1 == 0.0:
        return PinvResult(np.zeros_like(M), 0, s)
    keep = s > rtol * s1
    r = int(np.sum(keep))
    s_inv = np.zeros_like(s)
    s_inv[keep] = 1.0 / s[keep]
    P = (Vh.conj().T * s_inv) @ U.conj().T
    return PinvResult(P, r, s)


def is_ep(M, tol: float = 1e-9) -> bool:
    """EP test: range of M equals range of M* (as orthogonal projectors)."""
    M = np.asarray(M, dtype=complex)
    U, s, Vh = np.linalg.svd(M)
    s1 = float(s[0]) if s.size else 0.0
    if s1 <= 1e-14:
        return True
    r = int(np.sum(s > 1e-10 * s1))
    Pu = U[:, :r] @ U[:, :r].conj().T
    Pv = Vh[:r, :].conj().T @ Vh[:r, :]
    return float(np.linalg.norm(Pu - Pv, 2)) <= tol


def ep_im_identity_defect(M, rtol: float | None = None) -> float:
    """Defect of im(M^+) = -M^+ (im M) (M^+)* (valid for EP matrices)."""
    M = np.asarray(M, dtype=complex)
    P = pinv(M, rtol).pinv
    im = lambda A: (A - A.conj().T) / 2j  # noqa: E731
    lhs = im(P)
    rhs = -P @ im(M) @ P.conj().T
    return float(np.linalg.norm(lhs - rhs, 2))


def _as_evaluator(F, what: str) -> tuple[Evaluator, float | None, str | None]:
    """Normalize a representation-or-evaluator argument.

    Returns (evaluator, endpoint or None, side or None).
    """
    if isinstance(F, Evaluator):
        return F, None, None
    if F.KIND in ("stieltjes_pair", "kk_pair", "s0", "sinf_triple"):
        return evaluator(F), F.alpha, "right"
    if F.KIND in ("t_pair", "t0", "tinf_triple"):
        return evaluator(F), F.beta, "left"
    raise UnsupportedKind(f"{what}: unsupported input kind {F.KIND}")


def _rank_guard(F: Evaluator, endpoint: float, side: str):
    probes = sample_points(endpoint, side, n=8, seed=11)
    rank_constancy(F, probes)  # raises RankInstability on disagreement


def pinv_map(F, endpoint: float | None = None, side: str = "right") -> Evaluator:
    """z -> -(z - a)^{-1} F(z)^+ (right ray) or -(b - z)^{-1} F(z)^+ (left).

    Maps the right-ray class into itself and dually for the left-ray
    class.  The input must have constant rank off the ray; an 8-point rank
    probe refuses inputs whose numerical rank jumps.
    """
    ev, ep, sd = _as_evaluator(F, "pinv_map")
    if ep is not None:
        endpoint, side = ep, sd
    if endpoint is None:
        raise ValueError("endpoint is required for a bare Evaluator input")
    _rank_guard(ev, endpoint, side)
    if side == "right":
        fn = lambda z: -pinv(ev.fn(z)).pinv / (z - endpoint)  # noqa: E731
    else:
        fn = lambda z: -pinv(ev.fn(z)).pinv / (endpoint - z)  # noqa: E731
    return Evaluator(ev.q, ev.excluded, fn)


def neg_pinv_map(F, endpoint: float | None = None, side: str = "right") -> Evaluator:
    """z -> -F(z)^+; exchanges the plain and product-form classes.

    Involutive on class members: applying it twice returns the original
    values wherever the rank is constant.
    """
    ev, ep, sd = _as_evaluator(F, "neg_pinv_map")
    if ep is not None:
        endpoint, side = ep, sd
    if endpoint is None:
        raise ValueError("endpoint is required for a bare Evaluator input")
    _rank_guard(ev, endpoint, side)
    return Evaluator(ev.q, ev.excluded, lambda z: -pinv(ev.fn(z)).pinv)


# ---------------------------------------------------------------------------
# Duality reflection
# ---------------------------------------------------------------------------


def dual_map(repr_: Representation, target: float) -> Representation:
    """Reflection duality G(z) = -[F(a + b - conj(z))]*.

    Maps right-ray representations with endpoint a to left-ray ones with
    endpoint b = ``target`` (and back), preserving the matrix parameters
    and pushing the measure forward under t -> a + b - t.  Involution:
    dual_map(dual_map(r, b), a) == r exactly on atoms.
    """
    k = repr_.KIND
    if k == "stieltjes_pair":
        a, b = repr_.alpha, float(target)
        return TPair(b, repr_.gamma, image_measure(repr_.mu, -1.0, a + b))
    if k == "t_pair":
        bta, a = repr_.beta, float(target)
        return StieltjesPair(a, repr_.gamma, image_measure(repr_.mu, -1.0, a + bta))
    if k == "s0":
        a, b = repr_.alpha, float(target)
        return T0Measure(b, image_measure(repr_.sigma, -1.0, a + b))
    if k == "t0":
        bta, a = repr_.beta, float(target)
        return S0Measure(a, image_measure(repr_.sigma, -1.0, a + bta))
    if k == "sinf_triple":
        a, b = repr_.alpha, float(target)
        return TInfTriple(b, repr_.D, repr_.E, image_measure(repr_.rho, -1.0, a + b))
    if k == "tinf_triple":
        bta, a = repr_.beta, float(target)
        return SInfTriple(a, repr_.D, repr_.E, image_measure(repr_.rho, -1.0, a + bta))
    raise UnsupportedKind(f"dual_map not defined for kind {k}")


# ---------------------------------------------------------------------------
# Congruence arithmetic
# ---------------------------------------------------------------------------


def congruence_sum(terms) -> StieltjesPair:
    """sum_k A_k* F_k A_k for pairs F_k with a common alpha.

    Each term is (A_k, pair_k) with A_k of shape (q_k, q); the result is a
    StieltjesPair of size q with gamma = sum A* gamma_k A and the atom-wise
    congruence of the measures (shared nodes merged).
    """
    terms = list(terms)
    if not terms:
        raise ValueError("need at least one term")
    alphas = {p.alpha for _, p in terms}
    if len(alphas) != 1:
        raise DimensionMismatch(f"terms do not share alpha: {sorted(alphas)}")
    alpha = alphas.pop()
    q_out = None
    gamma = None
    atoms = []
    for A, p in terms:
        A = np.asarray(A, dtype=complex)
        if A.ndim != 2 or A.shape[0] != p.q:
            raise DimensionMismatch(f"A has shape {A.shape}, pair has q = {p.q}")
        if q_out is None:
            q_out = A.shape[1]
            gamma = np.zeros((q_out, q_out), dtype=complex)
        elif A.shape[1] != q_out:
            raise DimensionMismatch("terms map to different output dimensions")
        gamma = gamma + A.conj().T @ p.gamma @ A
        for t, W in p.mu.atoms:
            atoms.append((t, A.conj().T @ W @ A))
    mu = MatrixMeasure(q_out, terms[0][1].mu.support, atoms)
    return StieltjesPair(alpha, gamma, mu)


def shift(pair: StieltjesPair, A) -> StieltjesPair:
    """Add a constant Hermitian matrix A; legal only if gamma + A stays PSD."""
    A = as_hermitian(A)
    new_gamma = pair.gamma + A
    if not is_psd(new_gamma):
        raise ShiftNotPsd("gamma + A is not positive semidefinite")
    return StieltjesPair(pair.alpha, new_gamma, pair.mu)


def direct_sum(pairs) -> StieltjesPair:
    """Block-diagonal direct sum of pairs with a common alpha."""
    pairs = list(pairs)
    if not pairs:
        raise ValueError("need at least one pair")
    alphas = {p.alpha for p in pairs}
    if len(alphas) != 1:
        raise DimensionMismatch("pairs do not share alpha")
    qs = [p.q for p in pairs]
    q = sum(qs)
    offsets = np.cumsum([0] + qs[:-1])
    gamma = np.zeros((q, q), dtype=complex)
    atoms = []
    for off, p in zip(offsets, pairs):
        sl = slice(off, off + p.q)
        gamma[sl, sl] = p.gamma
        for t, W in p.mu.atoms:
            big = np.zeros((q, q), dtype=complex)
            big[sl, sl] = W
            atoms.append((t, big))
    mu = MatrixMeasure(q, pairs[0].mu.support, atoms)
    return StieltjesPair(alphas.pop(), gamma, mu)


def _transpose_measure(mu: MatrixMeasure) -> MatrixMeasure:
    return MatrixMeasure(mu.q, mu.support, [(t, W.T) for t, W in mu.atoms])


def transpose_map(repr_: Representation) -> Representation:
    """Transpose every matrix parameter and atom weight.

    eval(transpose_map(r), z) equals eval(r, z) transposed, exactly.
    """
    k = repr_.KIND
    if k == "stieltjes_pair":
        return StieltjesPair(repr_.alpha, repr_.gamma.T, _transpose_measure(repr_.mu))
    if k == "kk_pair":
        return KKPair(repr_.alpha, repr_.C.T, _transpose_measure(repr_.eta))
    if k == "nevanlinna":
        return NevanlinnaTriple(repr_.A.T, repr_.B.T, _transpose_measure(repr_.nu))
    if k == "s0":
        return S0Measure(repr_.alpha, _transpose_measure(repr_.sigma))
    if k == "sinf_triple":
        return SInfTriple(repr_.alpha, repr_.D.T, repr_.E.T, _transpose_measure(repr_.rho))
    if k == "t_pair":
        return TPair(repr_.beta, repr_.gamma.T, _transpose_measure(repr_.mu))
    if k == "t0":
        return T0Measure(repr_.beta, _transpose_measure(repr_.sigma))
    if k == "tinf_triple":
        return TInfTriple(repr_.beta, repr_.D.T, repr_.E.T, _transpose_measure(repr_.rho))
    raise UnsupportedKind(f"transpose_map not defined for kind {k}")
