"""Semi-Hilbertian space built from a positive-semidefinite metric.

A metric ``A`` induces the semi-inner product ``<x, y>_A = <Ax, y>``
(linear in the first argument).  All operator functionals reduce to
classical ones on the rank-r compression

    M_r(T) = Lam^{1/2} (Q* T Q) Lam^{-1/2},

where ``A = Q Lam Q*`` is the thin spectral factorization: the map
``x -> Lam^{1/2} Q* x`` sends the A-unit sphere onto the Euclidean unit
sphere of C^r, carries the metric adjoint to the conjugate transpose,
and is multiplicative on operators that admit a metric adjoint.

Membership in that adjointable class is decided by nullspace
invariance, ``T(null A) <= null A``, which in finite dimension is
equivalent to the Douglas range condition ``range(T* A) <= range(A)``.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionMismatch, NonSquare, NotInBA, NotPSD
from .numkernel import as_matrix, frobenius, hermitian_eig

DEFAULT_TOL = 1e-10


@dataclass
class OperatorClassification:
    in_BA: bool
    a_selfadjoint: bool
    a_positive: bool
    a_normal: bool
    a_unitary: bool
    membership_residual: float = 0.0
    membership_threshold: float = 0.0

    def as_dict(self) -> dict:
        return {
            "in_BA": self.in_BA,
            "a_selfadjoint": self.a_selfadjoint,
            "a_positive": self.a_positive,
            "a_normal": self.a_normal,
            "a_unitary": self.a_unitary,
        }


@dataclass
class CompressedOperator:
    """The r x r reduction of an operator to the range of the metric."""

    r: int
    M: np.ndarray


@dataclass
class SemiHilbertSpace:
    """Validated metric with cached spectral data.

    Immutable after construction; every method is a pure function of its
    arguments, so instances are safe to share between threads.
    """

    dim: int
    metric: np.ndarray
    rank: int
    Q: np.ndarray           # dim x rank, orthonormal range basis
    lam: np.ndarray         # rank positive eigenvalues, ascending
    Qn: np.ndarray          # dim x (dim - rank), nullspace basis
    projector: np.ndarray   # Q Q*
    metric_pinv: np.ndarray
    metric_half: np.ndarray
    metric_half_pinv: np.ndarray
    tol: float = DEFAULT_TOL
    _sqrt_lam: np.ndarray = field(repr=False, default=None)

    # -- construction -----------------------------------------------------

    @staticmethod
    def from_metric(A, tol: float = DEFAULT_TOL) -> "SemiHilbertSpace":
        A = as_matrix(A)
        n = A.shape[0]
        if A.shape[0] != A.shape[1]:
            raise NonSquare(f"metric is {A.shape[0]}x{A.shape[1]}")
        eig = hermitian_eig(A, tol=1e-8)
        w, V = eig.eigenvalues, eig.eigenvectors
        lam_max = max(float(w[-1]), 0.0) if n else 0.0
        if n and float(w[0]) < -tol * max(lam_max, 1e-300):
            raise NotPSD(f"metric eigenvalue {w[0]:.3e} is negative")
        keep = w > tol * max(lam_max, 1e-300)
        Q, lam, Qn = V[:, keep], w[keep], V[:, ~keep]
        r = int(lam.shape[0])
        P = Q @ Q.conj().T
        pinv = (Q / lam) @ Q.conj().T if r else np.zeros_like(A)
        s = np.sqrt(lam)
        half = (Q * s) @ Q.conj().T if r else np.zeros_like(A)
        half_pinv = (Q / s) @ Q.conj().T if r else np.zeros_like(A)
        return SemiHilbertSpace(
            dim=n, metric=A, rank=r, Q=Q, lam=lam, Qn=Qn, projector=P,
            metric_pinv=pinv, metric_half=half, metric_half_pinv=half_pinv,
            tol=tol, _sqrt_lam=s,
        )

    # -- vectors -----------------------------------------------------------

    def _check_vector(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=complex).reshape(-1)
        if x.shape[0] != self.dim:
            raise DimensionMismatch(f"vector length {x.shape[0]} != dim {self.dim}")
        return x

    def a_inner(self, x, y) -> complex:
        """<x, y>_A = <Ax, y>, linear in the first argument."""
        x, y = self._check_vector(x), self._check_vector(y)
        return complex(np.vdot(y, self.metric @ x))

    def a_norm(self, x) -> float:
        val = self.a_inner(x, x)
        return float(np.sqrt(max(val.real, 0.0)))

    def compress_vector(self, x) -> np.ndarray:
        """Coordinates of x on the range: y = Lam^{1/2} Q* x, with
        ||y|| = ||x||_A."""
        x = self._check_vector(x)
        return self._sqrt_lam * (self.Q.conj().T @ x)

    def lift_vector(self, y) -> np.ndarray:
        """Right inverse of compress_vector: x = Q Lam^{-1/2} y."""
        y = np.asarray(y, dtype=complex).reshape(-1)
        return self.Q @ (y / self._sqrt_lam)

    # -- operators ---------------------------------------------------------

    def _check_operator(self, T) -> np.ndarray:
        T = as_matrix(T)
        if T.shape != (self.dim, self.dim):
            raise DimensionMismatch(
                f"operator is {T.shape}, space dim is {self.dim}"
            )
        return T

    def membership_residual(self, T) -> tuple[float, float]:
        """Residual and threshold of the nullspace-invariance test."""
        T = self._check_operator(T)
        if self.rank in (0, self.dim):
            return 0.0, self.tol
        res = float(np.linalg.norm(self.metric_half @ T @ self.Qn))
        thr = self.tol * (1.0 + frobenius(T) * frobenius(self.metric))
        return res, thr

    def in_BA(self, T) -> bool:
        res, thr = self.membership_residual(T)
        return res <= thr

    def compression(self, T, check: bool = True) -> np.ndarray:
        """The r x r matrix Lam^{1/2} (Q* T Q) Lam^{-1/2}."""
        T = self._check_operator(T)
        if check and not self.in_BA(T):
            res, thr = self.membership_residual(T)
            raise NotInBA(
                "operator maps null(A) outside null(A): nullspace-invariance "
                f"residual {res:.3e} exceeds {thr:.3e}"
            )
        if self.rank == 0:
            return np.zeros((0, 0), dtype=complex)
        if not T.imag.any() and not np.iscomplexobj(self.Q):
            T = T.real  # keep real inputs on the fast real BLAS path
        core = self.Q.conj().T @ T @ self.Q
        return core * (self._sqrt_lam[:, None] / self._sqrt_lam[None, :])

    def compress(self, T) -> CompressedOperator:
        return CompressedOperator(r=self.rank, M=self.compression(T))

    def classify(self, T) -> OperatorClassification:
        T = self._check_operator(T)
        res, thr = self.membership_residual(T)
        member = res <= thr
        scale = max(1.0, frobenius(self.metric) * frobenius(T))
        AT = self.metric @ T
        selfadj = float(np.linalg.norm(AT - T.conj().T @ self.metric)) <= self.tol * scale
        positive = False
        if selfadj:
            H = (AT + AT.conj().T) / 2
            w = np.linalg.eigvalsh(H)
            top = max(float(w[-1]), 0.0) if w.size else 0.0
            positive = (not w.size) or float(w[0]) >= -self.tol * max(top, 1.0)
        normal = unitary = False
        if member:
            M = self.compression(T, check=False)
            if M.size:
                mm = M.conj().T @ M
                comm = float(np.linalg.norm(mm - M @ M.conj().T))
                normal = comm <= self.tol * max(1.0, frobenius(M) ** 2)
                unitary = float(
                    np.linalg.norm(mm - np.eye(self.rank))
                ) <= self.tol * max(1.0, frobenius(M) ** 2)
            else:
                normal = unitary = True
        return OperatorClassification(
            in_BA=member, a_selfadjoint=selfadj, a_positive=positive,
            a_normal=normal, a_unitary=unitary,
            membership_residual=res, membership_threshold=thr,
        )

    def sharp_adjoint(self, T) -> np.ndarray:
        """The distinguished metric adjoint ``A^+ T* A`` (requires
        membership; satisfies ``A T^sharp = T* A``)."""
        T = self._check_operator(T)
        if not self.in_BA(T):
            res, thr = self.membership_residual(T)
            raise NotInBA(
                "no metric adjoint: nullspace-invariance residual "
                f"{res:.3e} exceeds {thr:.3e}"
            )
        return self.metric_pinv @ T.conj().T @ self.metric

    def re_a(self, T) -> np.ndarray:
        """Metric-Hermitian part (T + T^sharp) / 2."""
        return (T + self.sharp_adjoint(T)) / 2

    def im_a(self, T) -> np.ndarray:
        """Metric-skew part (T - T^sharp) / 2i."""
        return (self._check_operator(T) - self.sharp_adjoint(T)) / 2j


def build_space(A, tol: float = DEFAULT_TOL) -> SemiHilbertSpace:
    """Validate a Hermitian PSD metric and cache its spectral data."""
    return SemiHilbertSpace.from_metric(A, tol=tol)
