"""Boundary integral equation with the generalized Neumann kernel.

For a curve eta(t) and an auxiliary function A(t) the kernels are

    N(s,t) = (1/pi) Im[ (A(s)/A(t)) eta'(t) / (eta(t) - eta(s)) ]
    M(s,t) = (1/pi) Re[ (A(s)/A(t)) eta'(t) / (eta(t) - eta(s)) ]

with A(t) = eta(t) - alpha for a bounded domain (alpha interior) and
A(t) = 1 for an unbounded one. N is continuous; M has a cotangent
singularity, split off as

    M(s,t) = -(1/(2 pi)) cot((s-t)/2) + M1(s,t)

where M1 is continuous. The singular part acts on densities as minus the
periodic conjugation operator and is applied spectrally; only N and M1
are discretized by the trapezoidal rule (uniform weight 2 pi / n, with
corner nodes carrying zero weight because eta' vanishes there).

Diagonal entries of the assembled matrices are not taken from the
pointwise limits. Instead they enforce the exact row integrals

    integral of N(s, .) over a period = -1
    integral of M1(s, .) over a period = 0

so each diagonal equals the defect of the off-diagonal trapezoidal row
sum. On smooth rows this agrees with the analytic limit up to the
(superalgebraically small) quadrature error, while at rows near corners
it absorbs the interior-angle jump factor that the pointwise limit
misses. This keeps graded corner meshes fully accurate and makes the
assembly independent of eta''.

Solving (I - N) rho = -M gamma for the real density rho and averaging

    h = (M rho - (I - N) gamma) / 2

yields the constant h that the conformal mapping modules consume.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.sparse.linalg import LinearOperator, gmres

from .curves import BoundaryCurve

__all__ = [
    "KernelContext",
    "bounded_context",
    "unbounded_context",
    "kernel_N",
    "kernel_M1",
    "conjugate_periodic",
    "apply_N",
    "apply_M",
    "SolveConfig",
    "GnkSolution",
    "ConvergenceError",
    "solve_neumann_system",
]


class ConvergenceError(RuntimeError):
    """GMRES failed to reach the requested tolerance."""

    def __init__(self, message: str, residual: float):
        super().__init__(message)
        self.residual = residual


@dataclass
class SolveConfig:
    """Linear solver controls for the integral equation."""

    gmres_tol: float = 0.5e-14
    max_iters: int = 100
    dense_direct: bool = False


@dataclass
class KernelContext:
    """A curve together with the auxiliary function A defining the kernels."""

    curve: BoundaryCurve
    A: np.ndarray
    dA: np.ndarray
    alpha: complex | None = None
    _cache: dict = field(default_factory=dict, repr=False)

    @property
    def n(self) -> int:
        return self.curve.n

    def matrices(self):
        """Dense Nystroem matrices (N, M1), assembled once and cached."""
        if "NM" not in self._cache:
            self._cache["NM"] = _assemble(self)
        return self._cache["NM"]


def bounded_context(curve: BoundaryCurve, alpha: complex) -> KernelContext:
    """Kernel data for a bounded domain: A(t) = eta(t) - alpha."""
    if curve.orientation != "ccw":
        raise ValueError("bounded mode expects a counterclockwise curve")
    alpha = complex(alpha)
    A = curve.eta - alpha
    if np.min(np.abs(A)) == 0.0:
        raise ValueError("alpha lies on the boundary")
    return KernelContext(curve=curve, A=A, dA=np.asarray(curve.deta), alpha=alpha)


def unbounded_context(curve: BoundaryCurve) -> KernelContext:
    """Kernel data for an unbounded domain: A(t) = 1."""
    if curve.orientation != "cw":
        raise ValueError("unbounded mode expects a clockwise curve")
    n = curve.n
    return KernelContext(
        curve=curve,
        A=np.ones(n, dtype=complex),
        dA=np.zeros(n, dtype=complex),
        alpha=None,
    )


def _diagonal(ctx: KernelContext) -> np.ndarray:
    """Complex diagonal limit (1/pi)(eta''/(2 eta') - A'/A); zero at corners."""
    cv = ctx.curve
    d = np.zeros(cv.n, dtype=complex)
    mask = cv.deta != 0.0
    d[mask] = (cv.ddeta[mask] / (2.0 * cv.deta[mask]) - ctx.dA[mask] / ctx.A[mask]) / np.pi
    return d


def _cot_row(n: int) -> np.ndarray:
    # cot(pi m / n) for m = 0..n-1 (index 0 unused; cot has period pi so
    # negative offsets reduce to the same table)
    m = np.arange(n, dtype=float)
    with np.errstate(divide="ignore"):
        c = 1.0 / np.tan(np.pi * m / n)
    c[0] = 0.0
    if n % 2 == 0:
        c[n // 2] = 0.0
    return c


def _assemble(ctx: KernelContext):
    """Dense (N, M1) matrices, built in row blocks to bound peak memory.

    Diagonals come from the row-sum rule: with weight w = 2 pi / n,
    w * sum_j N[i, j] = -1 and w * sum_j M1[i, j] = 0 exactly.
    """
    cv = ctx.curve
    n = cv.n
    eta = cv.eta
    col = np.zeros(n, dtype=complex)
    nz = cv.deta != 0.0  # corner columns stay exactly zero
    col[nz] = cv.deta[nz] / (ctx.A[nz] * np.pi)
    cot = _cot_row(n) / (2.0 * np.pi)
    idx = np.arange(n)
    N = np.empty((n, n), dtype=float)
    M1 = np.empty((n, n), dtype=float)
    inv_w = n / (2.0 * np.pi)
    block = max(1, min(n, 8_000_000 // n))
    for r0 in range(0, n, block):
        r1 = min(n, r0 + block)
        rows = slice(r0, r1)
        diff = eta[None, :] - eta[rows, None]
        local = np.arange(r0, r1) - r0
        diff[local, idx[rows]] = 1.0  # placeholder, diagonal set below
        kblock = (ctx.A[rows, None] / diff) * col[None, :]
        N[rows] = kblock.imag
        M1[rows] = kblock.real
        # cotangent correction, a circulant in the node index difference
        M1[rows] += cot[(idx[rows, None] - idx[None, :]) % n]
        N[rows][local, idx[rows]] = 0.0
        M1[rows][local, idx[rows]] = 0.0
        N[rows][local, idx[rows]] = -inv_w - N[rows].sum(axis=1)
        M1[rows][local, idx[rows]] = -M1[rows].sum(axis=1)
    return N, M1


def kernel_N(ctx: KernelContext, i: int, j: int) -> float:
    """Single entry of the Neumann kernel at nodes (i, j), 0-based.

    The diagonal returns the smooth-point limit
    (1/pi) Im[eta''/(2 eta') - A'/A]; the assembled matrices replace it
    with the row-sum value, which converges to the same limit on smooth
    rows. Off-diagonal entries match the matrices exactly.
    """
    cv = ctx.curve
    if cv.deta[j] == 0.0:
        return 0.0
    if i == j:
        return float(_diagonal(ctx)[i].imag)
    val = (ctx.A[i] / ctx.A[j]) * cv.deta[j] / (cv.eta[j] - cv.eta[i])
    return float(val.imag / np.pi)


def kernel_M1(ctx: KernelContext, i: int, j: int) -> float:
    """Single entry of the smooth remainder M1 at nodes (i, j), 0-based.

    Same diagonal convention as kernel_N: the pointwise limit here, the
    row-sum value in the assembled matrices.
    """
    cv = ctx.curve
    if i == j:
        if cv.deta[i] == 0.0:
            return 0.0
        return float(_diagonal(ctx)[i].real)
    s, t = cv.t[i], cv.t[j]
    cot = np.cos(0.5 * (s - t)) / np.sin(0.5 * (s - t))
    if cv.deta[j] == 0.0:
        return float(cot / (2.0 * np.pi))
    val = (ctx.A[i] / ctx.A[j]) * cv.deta[j] / (cv.eta[j] - cv.eta[i])
    return float(val.real / np.pi + cot / (2.0 * np.pi))


def conjugate_periodic(values: np.ndarray) -> np.ndarray:
    """Periodic conjugation: multiplier -i sgn(k), zero mean and Nyquist.

    Sends cos(k t) to sin(k t) and sin(k t) to -cos(k t).
    """
    values = np.asarray(values, dtype=float)
    n = values.shape[0]
    if n % 2:
        raise ValueError("sample count must be even")
    k = np.fft.rfftfreq(n, d=1.0 / n)
    mult = -1j * np.sign(k)
    mult[-1] = 0.0  # Nyquist
    return np.fft.irfft(mult * np.fft.rfft(values), n)


def apply_N(ctx: KernelContext, rho: np.ndarray) -> np.ndarray:
    """Trapezoidal application of the Neumann kernel to a density."""
    N, _ = ctx.matrices()
    return ctx.curve.weight * (N @ np.asarray(rho, dtype=float))


def apply_M(ctx: KernelContext, rho: np.ndarray) -> np.ndarray:
    """Application of the singular kernel M: spectral cotangent part plus M1."""
    _, M1 = ctx.matrices()
    rho = np.asarray(rho, dtype=float)
    return -conjugate_periodic(rho) + ctx.curve.weight * (M1 @ rho)


@dataclass
class GnkSolution:
    """Density rho, the mapping constant h, and solver diagnostics."""

    rho: np.ndarray
    h_pointwise: np.ndarray
    h: float
    h_spread: float
    gmres_iters: int
    residual: float


def solve_neumann_system(ctx: KernelContext, gamma: np.ndarray,
                         cfg: SolveConfig | None = None,
                         x0: np.ndarray | None = None) -> GnkSolution:
    """Solve (I - N) rho = -M gamma, then form h = (M rho - (I - N) gamma)/2.

    gamma is the real boundary data of the mapping problem. The returned
    h is the average of the pointwise values; their spread h_spread is a
    useful self-check (it vanishes with the discretization error).
    """
    if cfg is None:
        cfg = SolveConfig()
    gamma = np.asarray(gamma, dtype=float)
    n = ctx.n
    if gamma.shape != (n,):
        raise ValueError("gamma must match the curve's node count")
    if n % 2:
        raise ValueError("node count must be even")
    N, M1 = ctx.matrices()
    w = ctx.curve.weight
    rhs = conjugate_periodic(gamma) - w * (M1 @ gamma)
    rhs_norm = float(np.linalg.norm(rhs))
    iters = 0
    if cfg.dense_direct:
        if n > 1024:
            raise ValueError("dense direct solve is limited to n <= 1024")
        rho = np.linalg.solve(np.eye(n) - w * N, rhs)
    elif rhs_norm == 0.0:
        rho = np.zeros(n)
    else:
        op = LinearOperator((n, n), matvec=lambda v: v - w * (N @ v), dtype=float)
        history = []
        rho, info = gmres(
            op, rhs, x0=x0, rtol=cfg.gmres_tol, atol=0.0,
            restart=cfg.max_iters, maxiter=1,
            callback=lambda pr: history.append(pr), callback_type="pr_norm",
        )
        iters = len(history)
        if info != 0:
            res = float(np.linalg.norm(rho - w * (N @ rho) - rhs)) / rhs_norm
            raise ConvergenceError(
                f"GMRES did not reach tol {cfg.gmres_tol:g} within "
                f"{cfg.max_iters} iterations (residual {res:.3e})", res)
    residual = float(np.linalg.norm(rho - w * (N @ rho) - rhs))
    residual /= rhs_norm if rhs_norm > 0.0 else 1.0
    h_pw = 0.5 * (apply_M(ctx, rho) - gamma + w * (N @ gamma))
    h = float(np.mean(h_pw))
    spread = float(np.max(np.abs(h_pw - h))) if n else 0.0
    return GnkSolution(rho=rho, h_pointwise=h_pw, h=h, h_spread=spread,
                       gmres_iters=iters, residual=residual)
