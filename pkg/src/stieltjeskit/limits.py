"""Extraction of limit-defined parameters from black-box evaluators.

The representations are analytic in 1/y at infinity along vertical and
radial rays, so a geometric ladder y_k = y0 * 2^k combined with Richardson
extrapolation in 1/y converges fast and carries an explicit increment-based
error estimate.

Supported modes:

* ``plain_iy``:      lim F(iy)            (the constant gamma of a pair)
* ``y_scaled``:      -i lim y F(iy)       (total mass of a resolvent measure)
* ``radial``:        lim F(alpha + r e^{i phi}), phi in (pi/2, 3pi/2)
* ``neg_plain``:     -lim G(iy)           (gamma of a left-ray pair)
* ``neg_y_scaled``:  -i lim y G(iy)       (total mass, left-ray version)
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ClassMismatch, NoConvergence
from .representations import Evaluator

EPS_LIM = 1e-10
K_MAX = 48

MODES = ("plain_iy", "y_scaled", "radial", "neg_plain", "neg_y_scaled")


@dataclass(frozen=True)
class LimitEstimate:
    value: np.ndarray
    error_bound: float
    ladder_depth: int


def _sample(F: Evaluator, mode: str, y: float, alpha: float, phi: float) -> np.ndarray:
    if mode == "plain_iy":
        return F(1j * y)
    if mode == "y_scaled":
        return -1j * y * F(1j * y)
    if mode == "radial":
        return F(alpha + y * complex(math.cos(phi), math.sin(phi)))
    if mode == "neg_plain":
        return -F(1j * y)
    if mode == "neg_y_scaled":
        return -1j * y * F(1j * y)
    raise ValueError(f"unknown mode {mode!r}")


def limit_at_infinity(
    F: Evaluator,
    mode: str = "plain_iy",
    alpha: float = 0.0,
    phi: float = math.pi,
    y0: float = 1.0,
    k_max: int = K_MAX,
) -> LimitEstimate:
    """Richardson-extrapolated limit along a geometric ladder y_k = y0 2^k.

    Stops when successive diagonal extrapolants differ by less than
    EPS_LIM * (1 + ||value||); raises ``NoConvergence`` at depth ``k_max``.
    """
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}")
    if mode == "radial" and not (math.pi / 2 < phi < 3 * math.pi / 2):
        raise ValueError("phi must lie in (pi/2, 3*pi/2)")

    rows: list[list[np.ndarray]] = []
    prev_diag = None
    for k in range(k_max + 1):
        y = y0 * 2.0**k
        row = [_sample(F, mode, y, alpha, phi)]
        # Neville elimination of successive powers of 1/y (ratio 2).
        for j in range(1, k + 1):
            factor = 2.0**j
            row.append((factor * row[j - 1] - rows[k - 1][j - 1]) / (factor - 1.0))
        rows.append(row)
        diag = row[-1]
        if prev_diag is not None:
            inc = float(np.linalg.norm(diag - prev_diag))
            if inc < EPS_LIM * (1.0 + float(np.linalg.norm(diag))):
                return LimitEstimate(diag, inc, k)
        prev_diag = diag
    raise NoConvergence(
        f"ladder reached k_max = {k_max} without meeting the stopping criterion",
        last_estimates=(rows[-2][-1], rows[-1][-1]),
    )


def extract_params(
    F: Evaluator,
    alpha: float,
    claimed: str,
    tol: float = 1e-6,
) -> dict:
    """Extract and cross-check limit parameters for a claimed class.

    claimed is one of {"s", "s0", "sdot", "t", "t0", "tdot"}.  For the
    bounded classes the returned record carries the mass estimate; for the
    plain classes the constant term; for the decaying classes the record
    asserts the plain limit vanishes.  Raises ``ClassMismatch`` when the
    extracted values contradict the claim beyond ``tol``.
    """
    claimed = claimed.lower()
    record: dict = {"claimed": claimed, "alpha": alpha}
    if claimed in ("s", "sdot"):
        est = limit_at_infinity(F, "plain_iy")
        radial = limit_at_infinity(F, "radial", alpha=alpha)
        record["gamma"] = est
        record["gamma_radial"] = radial
        gap = float(np.linalg.norm(est.value - radial.value))
        budget = 2.0 * (est.error_bound + radial.error_bound) + tol
        if gap > budget:
            raise ClassMismatch(
                f"vertical and radial limits disagree by {gap:.3e} (budget {budget:.3e})"
            )
        if claimed == "sdot" and float(np.linalg.norm(est.value)) > tol:
            raise ClassMismatch("plain limit does not vanish for the decaying class")
    elif claimed == "s0":
        plain = limit_at_infinity(F, "plain_iy")
        record["gamma"] = plain
        if float(np.linalg.norm(plain.value)) > tol:
            raise ClassMismatch("bounded class requires a vanishing plain limit")
        record["mass"] = limit_at_infinity(F, "y_scaled")
    elif claimed in ("t", "tdot"):
        est = limit_at_infinity(F, "neg_plain")
        record["gamma"] = est
        if claimed == "tdot" and float(np.linalg.norm(est.value)) > tol:
            raise ClassMismatch("plain limit does not vanish for the decaying class")
    elif claimed == "t0":
        plain = limit_at_infinity(F, "neg_plain")
        record["gamma"] = plain
        if float(np.linalg.norm(plain.value)) > tol:
            raise ClassMismatch("bounded class requires a vanishing plain limit")
        record["mass"] = limit_at_infinity(F, "neg_y_scaled")
    else:
        raise ValueError(f"unknown claimed class {claimed!r}")
    return record
