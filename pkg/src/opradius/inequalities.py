"""Machine-checkable catalog of the operator inequalities.

Each entry pairs an applicability predicate with lhs/rhs evaluators and
is checked at an absolute-plus-relative tolerance.  Three printed
statements (ids ``RA1.stated``, ``TD1.stated``, ``MRQ1.stated``)
disagree with their own derivations; both readings are registered and
the as-printed variants are marked ``flagged`` so a fuzz campaign
records their violations as findings instead of failures.

Evaluators work on compressions, where the metric adjoint is the
conjugate transpose, the seminorm is ``sigma_max`` and powers of
metric-positive operators are ordinary Hermitian PSD powers.
"""
from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import Inapplicable
from .functionals import numerical_radius, spectral_norm
from .numkernel import matrix_to_json
from .space import SemiHilbertSpace

TOL_ABS = 1e-9
TOL_REL = 1e-7

SQRT2 = math.sqrt(2.0)

# Default parameter grid walked by the fuzz harness.
PARAM_GRID = [
    {"alpha": a, "r": r, "p": p}
    for a in (0.0, 0.25, 0.5, 0.75, 1.0)
    for r in (1.0, 2.0, 3.0)
    for p in (2.0, 3.0)
]

COMMUTE_TOL = 1e-8


@dataclass
class InequalityCatalogEntry:
    id: str
    statement: str
    operand_kind: str       # one of OPERAND_KINDS
    evaluator: Callable     # (ctx, ops, params) -> (lhs, rhs, aux)
    params: tuple = ()      # names of parameters consumed
    variant: str = "as-stated"
    flagged: bool = False


OPERAND_KINDS = (
    "single",            # [T]
    "pair",              # [T, S]
    "quad",              # [T, X, Y, S]
    "family",            # [X1..Xn], n >= 2
    "commuting_pair",    # [T, S] commuting
    "normal_pair",       # [T, S] metric-normal
    "commuting_family",  # [T1..Tn] from a commuting family
    "positive_triples",  # [T1, X1, S1, ..., Tn, Xn, Sn], T/S metric-positive
    "op_vector",         # [T, x]
    "vec_pair",          # [a, b]
    "vec_triple",        # [x, y, z] / [a, b, e]
    "scalars",           # none; a, b passed as params
)


class EvalContext:
    """Per-operand-set cache of compressions, norms and radii."""

    def __init__(self, space: SemiHilbertSpace):
        self.space = space
        self._comp: dict[int, np.ndarray] = {}
        self._rad: dict[bytes, float] = {}
        self._nrm: dict[bytes, float] = {}

    def comp(self, T) -> np.ndarray:
        key = id(T)
        if key not in self._comp:
            self._comp[key] = self.space.compression(T)
        return self._comp[key]

    def rad(self, M: np.ndarray) -> float:
        key = M.tobytes()
        if key not in self._rad:
            self._rad[key] = numerical_radius(M)
        return self._rad[key]

    def nrm(self, M: np.ndarray) -> float:
        key = M.tobytes()
        if key not in self._nrm:
            self._nrm[key] = spectral_norm(M)
        return self._nrm[key]


def _hpow(H: np.ndarray, p: float) -> np.ndarray:
    """Power of a Hermitian PSD matrix, eigenvalues clamped at zero."""
    w, V = np.linalg.eigh((H + H.conj().T) / 2)
    w = np.maximum(w, 0.0)
    return (V * w**p) @ V.conj().T


def _require_positive_compression(ctx: EvalContext, T, label: str) -> np.ndarray:
    M = ctx.comp(T)
    scale = max(1.0, float(np.linalg.norm(M)))
    if np.linalg.norm(M - M.conj().T) > 1e-8 * scale:
        raise Inapplicable(f"{label} is not metric-positive (compression not Hermitian)")
    if M.size and float(np.linalg.eigvalsh((M + M.conj().T) / 2)[0]) < -1e-8 * scale:
        raise Inapplicable(f"{label} is not metric-positive (negative eigenvalue)")
    return (M + M.conj().T) / 2


def _vec_y(ctx: EvalContext, x) -> np.ndarray:
    return ctx.space.compress_vector(x)


# ---------------------------------------------------------------------------
# evaluators; ops is the operand list, params a dict
# ---------------------------------------------------------------------------

def _ev_cstar(ctx, ops, params):
    M = ctx.comp(ops[0])
    vals = (ctx.nrm(M.conj().T @ M), ctx.nrm(M @ M.conj().T),
            ctx.nrm(M) ** 2, ctx.nrm(M.conj().T) ** 2)
    return max(vals), min(vals), {}


def _ev_norm_equiv(ctx, ops, params):
    M = ctx.comp(ops[0])
    w, n = ctx.rad(M), ctx.nrm(M)
    lower = w - n / 2           # w >= ||T||/2
    upper = n - w               # w <= ||T||
    scale = n if n > 0 else 1.0
    aux = {"lower_margin_normalized": lower / scale,
           "upper_margin_normalized": upper / scale}
    if lower <= upper:
        return n / 2, w, aux    # binding branch: lower
    return w, n, aux            # binding branch: upper


def _ev_power(ctx, ops, params):
    n = int(params.get("n", 2))
    M = ctx.comp(ops[0])
    return ctx.rad(np.linalg.matrix_power(M, n)), ctx.rad(M) ** n, {}


def _ev_prod4(ctx, ops, params):
    B, C = ctx.comp(ops[0]), ctx.comp(ops[1])
    return ctx.rad(B @ C), 4 * ctx.rad(B) * ctx.rad(C), {}


def _require_commuting(B, C):
    scale = max(1.0, float(np.linalg.norm(B)) * float(np.linalg.norm(C)))
    if np.linalg.norm(B @ C - C @ B) > COMMUTE_TOL * scale:
        raise Inapplicable("operands do not commute")


def _ev_prod2(ctx, ops, params):
    B, C = ctx.comp(ops[0]), ctx.comp(ops[1])
    _require_commuting(B, C)
    return ctx.rad(B @ C), 2 * ctx.rad(B) * ctx.rad(C), {}


def _ev_prod1(ctx, ops, params):
    for i, label in ((0, "first"), (1, "second")):
        M = ctx.comp(ops[i])
        scale = max(1.0, float(np.linalg.norm(M)) ** 2)
        if np.linalg.norm(M.conj().T @ M - M @ M.conj().T) > 1e-8 * scale:
            raise Inapplicable(f"{label} operand is not metric-normal")
    B, C = ctx.comp(ops[0]), ctx.comp(ops[1])
    return ctx.rad(B @ C), ctx.rad(B) * ctx.rad(C), {}


def _family(ctx, ops):
    if len(ops) < 2:
        raise Inapplicable("family entries need at least two operators")
    fb = [ctx.comp(T) for T in ops]
    S1 = sum(fb)
    G = sum(b.conj().T @ b for b in fb)
    return fb, S1, G


def _ev_ra1_stated(ctx, ops, params):
    fb, S1, G = _family(ctx, ops)
    n = len(fb)
    W = (n - 2) * G + S1.conj().T @ S1
    return ctx.nrm(S1) ** 2, ctx.nrm(G) ** 2 + 0.5 * ctx.nrm(W), {}


def _ev_ra1_proof(ctx, ops, params):
    fb, S1, G = _family(ctx, ops)
    n = len(fb)
    W = (n - 2) * G + S1.conj().T @ S1
    return ctx.nrm(S1) ** 2, ctx.nrm(G) + 0.5 * ctx.nrm(W), {}


def _ev_ran(ctx, ops, params):
    fb, S1, G = _family(ctx, ops)
    return ctx.nrm(S1) ** 2, len(fb) * ctx.nrm(G), {}


def _ev_ra6(ctx, ops, params):
    B, C = ctx.comp(ops[0]), ctx.comp(ops[1])
    return (ctx.nrm((B + C) / 2) ** 2,
            ctx.nrm((B.conj().T @ B + C.conj().T @ C) / 2), {})


def _ev_ra7(ctx, ops, params):
    B = ctx.comp(ops[0])
    return (ctx.nrm((B + B.conj().T) / 2) ** 2,
            ctx.nrm((B.conj().T @ B + B @ B.conj().T) / 2), {})


def _ev_ra8(ctx, ops, params):
    B = ctx.comp(ops[0])
    return ctx.nrm(B) ** 2, ctx.nrm(B.conj().T @ B + B @ B.conj().T), {}


def _ev_rb1(ctx, ops, params):
    fb, S1, G = _family(ctx, ops)
    C = S1.conj().T @ S1 - G  # sum over j != k of Xj* Xk
    return ctx.nrm(S1) ** 2, ctx.nrm(G) + 0.5 * ctx.nrm(C) ** 2 + 0.5, {}


def _ev_rt1(ctx, ops, params):
    B, C = ctx.comp(ops[0]), ctx.comp(ops[1])
    return (ctx.nrm(B + C) ** 2,
            ctx.nrm(B.conj().T @ B + C.conj().T @ C)
            + 0.5 * ctx.nrm(B.conj().T @ C + C.conj().T @ B) ** 2 + 0.5, {})


def _ev_rt2(ctx, ops, params):
    B = ctx.comp(ops[0])
    Bs = B.conj().T
    return (ctx.nrm(B + Bs) ** 2,
            ctx.nrm(Bs @ B + B @ Bs)
            + 0.5 * ctx.nrm(Bs @ Bs + B @ B) ** 2 + 0.5, {})


def _ev_rt3(ctx, ops, params):
    B = ctx.comp(ops[0])
    Bs = B.conj().T
    return (ctx.nrm(B) ** 2,
            0.5 * ctx.nrm(Bs @ B + B @ Bs)
            + 0.25 * ctx.nrm(Bs @ B - B @ Bs) ** 2 + 0.5, {})


def _ev_ct1(ctx, ops, params):
    fb, S1, G = _family(ctx, ops)
    lhs = ctx.nrm(S1) ** 2 + sum(ctx.nrm(b) ** 2 for b in fb)
    rhs = ctx.nrm(G) + 0.25 * sum(
        ctx.nrm(b1 + b2) ** 2 for b1 in fb for b2 in fb
    )
    return lhs, rhs, {}


def _ev_td1_stated(ctx, ops, params):
    fb, S1, G = _family(ctx, ops)
    n = len(fb)
    eye = np.eye(G.shape[0])
    lhs = ctx.nrm(S1) ** 2 + sum(ctx.nrm(b) ** 2 for b in fb)
    rhs = ctx.nrm(G) + 0.25 * ctx.nrm((n - 1) * G + eye) ** 2
    return lhs, rhs, {}


def _ev_td1_proof(ctx, ops, params):
    fb, S1, G = _family(ctx, ops)
    eye = np.eye(G.shape[0])
    C = S1.conj().T @ S1 - G
    return ctx.nrm(S1) ** 2, ctx.nrm(G) + 0.25 * ctx.nrm(C + eye) ** 2, {}


def _ev_tt1(ctx, ops, params):
    B, C = ctx.comp(ops[0]), ctx.comp(ops[1])
    u, v = ctx.nrm(B + C) ** 2, ctx.nrm(B - C) ** 2
    lhs = ctx.nrm(B @ B.conj().T + C @ C.conj().T)
    return lhs, max(u, v) - abs(u - v) / 2, {}


def _re_im_sq(ctx, B):
    re2 = ctx.nrm((B + B.conj().T) / 2) ** 2
    im2 = ctx.nrm((B - B.conj().T) / 2j) ** 2
    return re2, im2


def _ev_tt2(ctx, ops, params):
    B = ctx.comp(ops[0])
    re2, im2 = _re_im_sq(ctx, B)
    lhs = ctx.nrm(B @ B.conj().T + B.conj().T @ B)
    return lhs, 4 * max(re2, im2) - 2 * abs(re2 - im2), {}


def _ev_qa1(ctx, ops, params):
    B, C = ctx.comp(ops[0]), ctx.comp(ops[1])
    lhs = ctx.rad(B @ C + C @ B)
    rhs = 2 * SQRT2 * ctx.nrm(B) * ctx.rad(C)
    aux = {"ratio": rhs / lhs} if lhs > 0 else {}
    return lhs, rhs, aux


def _ev_qa5(ctx, ops, params):
    B = ctx.comp(ops[0])
    w = ctx.rad(B)
    if w <= 1e-12:
        raise Inapplicable("radius too small to normalize")
    Bh = B / w
    y = _vec_y(ctx, ops[1])
    ny = float(np.linalg.norm(y))
    if ny <= 1e-12:
        raise Inapplicable("vector has zero metric norm")
    y = y / ny
    lhs = float(np.linalg.norm(Bh @ y) ** 2 + np.linalg.norm(Bh.conj().T @ y) ** 2)
    re2, im2 = _re_im_sq(ctx, Bh)
    return lhs, 4 * (1 - abs(re2 - im2) / 2), {}


def _gn_radicand(ctx, B):
    re2, im2 = _re_im_sq(ctx, B)
    return max(ctx.rad(B) ** 2 - abs(re2 - im2) / 2, 0.0)


def _ev_gn(ctx, ops, params):
    B = ctx.comp(ops[0])
    BX, BY = ctx.comp(ops[1]), ctx.comp(ops[2])
    C = ctx.comp(ops[3])
    lhs = max(ctx.rad(B @ BX @ C + C @ BY @ B),
              ctx.rad(B @ BX @ C - C @ BY @ B))
    rhs = (2 * SQRT2 * ctx.nrm(C) * max(ctx.nrm(BX), ctx.nrm(BY))
           * math.sqrt(_gn_radicand(ctx, B)))
    return lhs, rhs, {}


def _ev_mm1(ctx, ops, params):
    B, C = ctx.comp(ops[0]), ctx.comp(ops[1])
    lhs = max(ctx.rad(B @ C + C @ B), ctx.rad(B @ C - C @ B))
    rhs = 2 * SQRT2 * ctx.nrm(C) * math.sqrt(_gn_radicand(ctx, B))
    return lhs, rhs, {}


def _ev_mm2(ctx, ops, params):
    B = ctx.comp(ops[0])
    lhs = ctx.rad(B @ B)
    rhs = SQRT2 * ctx.nrm(B) * math.sqrt(_gn_radicand(ctx, B))
    return lhs, rhs, {}


def _ev_xy2(ctx, ops, params):
    fb, S1, _ = _family(ctx, ops)
    return (ctx.nrm(S1) ** 2,
            sum(ctx.rad(b.conj().T @ S1) for b in fb), {})


def _ev_st1(ctx, ops, params):
    fb, S1, _ = _family(ctx, ops)
    return (ctx.nrm(S1) ** 2,
            4 * ctx.rad(S1) * sum(ctx.rad(b) for b in fb), {})


def _ev_st2(ctx, ops, params):
    fb, S1, _ = _family(ctx, ops)
    for b in fb:
        scale = max(1.0, float(np.linalg.norm(S1)) * float(np.linalg.norm(b)))
        if np.linalg.norm(S1 @ b.conj().T - b.conj().T @ S1) > COMMUTE_TOL * scale:
            raise Inapplicable("sum does not commute with a member's adjoint")
    return (ctx.nrm(S1) ** 2,
            2 * ctx.rad(S1) * sum(ctx.rad(b) for b in fb), {})


def _ev_buzano(ctx, ops, params):
    sp = ctx.space
    x, y, z = ops
    nz = sp.a_norm(z)
    if nz <= 1e-12:
        raise Inapplicable("unit vector has zero metric norm")
    z = np.asarray(z, dtype=complex).reshape(-1) / nz
    lhs = abs(sp.a_inner(x, z) * sp.a_inner(z, y))
    rhs = 0.5 * (sp.a_norm(x) * sp.a_norm(y) + abs(sp.a_inner(x, y)))
    return lhs, rhs, {}


def _ev_md1(ctx, ops, params):
    sp = ctx.space
    a, b, e = ops
    alpha = float(params.get("alpha", 0.5))
    ne = sp.a_norm(e)
    if ne <= 1e-12:
        raise Inapplicable("unit vector has zero metric norm")
    e = np.asarray(e, dtype=complex).reshape(-1) / ne
    lhs = abs(sp.a_inner(a, e) * sp.a_inner(e, b))
    rhs = ((1 + alpha) / 2 * sp.a_norm(a) * sp.a_norm(b)
           + (1 - alpha) / 2 * abs(sp.a_inner(a, b)))
    return lhs, rhs, {}


def _ev_md2(ctx, ops, params):
    sp = ctx.space
    a, b, e = ops
    alpha = float(params.get("alpha", 0.5))
    r = float(params.get("r", 1.0))
    if r < 1:
        raise Inapplicable("exponent r must be >= 1")
    ne = sp.a_norm(e)
    if ne <= 1e-12:
        raise Inapplicable("unit vector has zero metric norm")
    e = np.asarray(e, dtype=complex).reshape(-1) / ne
    lhs = abs(sp.a_inner(a, e) * sp.a_inner(e, b)) ** r
    rhs = ((1 + alpha) / 2 * (sp.a_norm(a) * sp.a_norm(b)) ** r
           + (1 - alpha) / 2 * abs(sp.a_inner(a, b)) ** r)
    return lhs, rhs, {}


def _ev_ra2(ctx, ops, params):
    sp = ctx.space
    a, b = ops
    a = np.asarray(a, dtype=complex).reshape(-1)
    b = np.asarray(b, dtype=complex).reshape(-1)
    return sp.a_inner(a, b).real, 0.25 * sp.a_norm(a + b) ** 2, {}


def _ev_md3(ctx, ops, params):
    B = ctx.comp(ops[0])
    alpha = float(params.get("alpha", 0.5))
    r = float(params.get("r", 1.0))
    if r < 1:
        raise Inapplicable("exponent r must be >= 1")
    lhs = ctx.rad(B) ** (2 * r)
    rhs = ((1 + alpha) / 4
           * ctx.nrm(_hpow(B.conj().T @ B, r) + _hpow(B @ B.conj().T, r))
           + (1 - alpha) / 2 * ctx.rad(B @ B) ** r)
    return lhs, rhs, {}


def _ev_ag(ctx, ops, params):
    a = float(params.get("a", 1.0))
    b = float(params.get("b", 1.0))
    alpha = float(params.get("alpha", 0.5))
    r = float(params.get("r", 1.0))
    p = float(params.get("p", 2.0))
    if a < 0 or b < 0 or not 0 <= alpha <= 1 or r < 1 or p <= 1:
        raise Inapplicable("need a,b >= 0, alpha in [0,1], r >= 1, p > 1")
    q = p / (p - 1)
    chain = [
        (a**alpha * b ** (1 - alpha), alpha * a + (1 - alpha) * b),
        (alpha * a + (1 - alpha) * b,
         (alpha * a**r + (1 - alpha) * b**r) ** (1 / r)),
        (a * b, a**p / p + b**q / q),
        (a**p / p + b**q / q, (a ** (p * r) / p + b ** (q * r) / q) ** (1 / r)),
    ]
    lhs, rhs = min(chain, key=lambda t: t[1] - t[0])
    return lhs, rhs, {}


def _triples(ctx, ops):
    if len(ops) < 3 or len(ops) % 3:
        raise Inapplicable("operands must be (T_j, X_j, S_j) triples")
    n = len(ops) // 3
    Ts, Xs, Ss = [], [], []
    for j in range(n):
        Ts.append(_require_positive_compression(ctx, ops[3 * j], f"T_{j + 1}"))
        Xs.append(ctx.comp(ops[3 * j + 1]))
        Ss.append(_require_positive_compression(ctx, ops[3 * j + 2], f"S_{j + 1}"))
    return n, Ts, Xs, Ss


def _mrq1(ctx, ops, params, stated: bool):
    n, Ts, Xs, Ss = _triples(ctx, ops)
    alpha = float(params.get("alpha", 0.5))
    r = float(params.get("r", 1.0))
    p = float(params.get("p", 2.0))
    q = p / (p - 1)
    if p * r < 2 or q * r < 2:
        raise Inapplicable("requires p*r >= 2 and q*r >= 2")
    comb = sum(_hpow(Ts[j], alpha) @ Xs[j] @ _hpow(Ss[j], alpha) for j in range(n))
    lhs = ctx.rad(comb) ** r
    nX = max(ctx.nrm(X) for X in Xs)
    mul = 2.0 if stated else 1.0
    rhs = n ** (r - 1) * nX**r * sum(
        ctx.nrm(_hpow(Ts[j], mul * p * r) / p + _hpow(Ss[j], mul * q * r) / q) ** alpha
        for j in range(n)
    )
    return lhs, rhs, {}


def _ev_mrq1_stated(ctx, ops, params):
    return _mrq1(ctx, ops, params, stated=True)


def _ev_mrq1_proof(ctx, ops, params):
    return _mrq1(ctx, ops, params, stated=False)


def _ev_final1(ctx, ops, params):
    n, Ts, Xs, Ss = _triples(ctx, ops)
    alpha = float(params.get("alpha", 0.5))
    r = float(params.get("r", 2.0))
    if r < 2:
        raise Inapplicable("requires r >= 2")
    comb = sum(
        _hpow(Ts[j], alpha) @ Xs[j] @ _hpow(Ss[j], 1 - alpha) for j in range(n)
    )
    lhs = ctx.rad(comb) ** r
    nX = max(ctx.nrm(X) for X in Xs)
    rhs = n ** (r - 1) * nX**r * sum(
        ctx.nrm(alpha * _hpow(Ts[j], r) + (1 - alpha) * _hpow(Ss[j], r))
        for j in range(n)
    )
    return lhs, rhs, {}


def _ev_submult(ctx, ops, params):
    B, C = ctx.comp(ops[0]), ctx.comp(ops[1])
    return ctx.nrm(B @ C), ctx.nrm(B) * ctx.nrm(C), {}


_CATALOG: list[InequalityCatalogEntry] = [
    InequalityCatalogEntry(
        "CSTAR", "||T#T|| = ||TT#|| = ||T||^2 = ||T#||^2 (checked as max<=min)",
        "single", _ev_cstar),
    InequalityCatalogEntry(
        "NORM-EQUIV", "||T||/2 <= w(T) <= ||T|| (binding branch reported)",
        "single", _ev_norm_equiv),
    InequalityCatalogEntry(
        "POWER", "w(T^n) <= w(T)^n", "single", _ev_power, params=("n",)),
    InequalityCatalogEntry(
        "PROD4", "w(TS) <= 4 w(T) w(S)", "pair", _ev_prod4),
    InequalityCatalogEntry(
        "PROD2", "TS = ST implies w(TS) <= 2 w(T) w(S)",
        "commuting_pair", _ev_prod2),
    InequalityCatalogEntry(
        "PROD1", "T, S metric-normal implies w(TS) <= w(T) w(S)",
        "normal_pair", _ev_prod1),
    InequalityCatalogEntry(
        "RA1.stated",
        "||sum X||^2 <= ||sum X#X||^2 + ||(n-2) sum X#X + (sum X#)(sum X)||/2",
        "family", _ev_ra1_stated, flagged=True),
    InequalityCatalogEntry(
        "RA1.proof",
        "||sum X||^2 <= ||sum X#X|| + ||(n-2) sum X#X + (sum X#)(sum X)||/2",
        "family", _ev_ra1_proof, variant="proof-consistent"),
    InequalityCatalogEntry(
        "RAN", "||sum X||^2 <= n ||sum X#X||", "family", _ev_ran),
    InequalityCatalogEntry(
        "RA6", "||(B+C)/2||^2 <= ||(B#B + C#C)/2||", "pair", _ev_ra6),
    InequalityCatalogEntry(
        "RA7", "||(X+X#)/2||^2 <= ||(X#X + XX#)/2||", "single", _ev_ra7),
    InequalityCatalogEntry(
        "RA8", "||T||^2 <= ||T#T + TT#||", "single", _ev_ra8),
    InequalityCatalogEntry(
        "RB1",
        "||sum X||^2 <= ||sum X#X|| + ||sum_{j!=k} Xj# Xk||^2 / 2 + 1/2",
        "family", _ev_rb1),
    InequalityCatalogEntry(
        "RT1", "||T+S||^2 <= ||T#T+S#S|| + ||T#S+S#T||^2/2 + 1/2",
        "pair", _ev_rt1),
    InequalityCatalogEntry(
        "RT2", "||X+X#||^2 <= ||X#X+XX#|| + ||(X#)^2+X^2||^2/2 + 1/2",
        "single", _ev_rt2),
    InequalityCatalogEntry(
        "RT3", "||T||^2 <= ||T#T+TT#||/2 + ||T#T-TT#||^2/4 + 1/2",
        "single", _ev_rt3),
    InequalityCatalogEntry(
        "CT1",
        "||sum X||^2 + sum ||Xk||^2 <= ||sum X#X|| + sum_{j,k} ||Xj+Xk||^2 / 4",
        "family", _ev_ct1),
    InequalityCatalogEntry(
        "TD1.stated",
        "||sum X||^2 + sum ||Xk||^2 <= ||sum X#X|| + ||(n-1) sum X#X + I||^2 / 4",
        "family", _ev_td1_stated, flagged=True),
    InequalityCatalogEntry(
        "TD1.proof",
        "||sum X||^2 <= ||sum X#X|| + ||sum_{j!=k} Xj# Xk + I||^2 / 4",
        "family", _ev_td1_proof, variant="proof-consistent"),
    InequalityCatalogEntry(
        "TT1",
        "||TT#+SS#|| <= max(||T+S||^2, ||T-S||^2) - |...diff...|/2",
        "pair", _ev_tt1),
    InequalityCatalogEntry(
        "TT2",
        "||TT#+T#T|| <= 4 max(||Re T||^2, ||Im T||^2) - 2 |diff|",
        "single", _ev_tt2),
    InequalityCatalogEntry(
        "QA1", "w(TS+ST) <= 2 sqrt2 ||T|| w(S)", "pair", _ev_qa1),
    InequalityCatalogEntry(
        "QA5",
        "w(T) <= 1, ||x||_A = 1: ||Tx||^2 + ||T#x||^2 <= "
        "4 (1 - |  ||Re T||^2 - ||Im T||^2 | / 2)  (T scaled by 1/w(T))",
        "op_vector", _ev_qa5),
    InequalityCatalogEntry(
        "GN",
        "w(TXS +- SYT) <= 2 sqrt2 ||S|| max(||X||, ||Y||) "
        "sqrt(w(T)^2 - |diff|/2)",
        "quad", _ev_gn),
    InequalityCatalogEntry(
        "MM1", "w(TS +- ST) <= 2 sqrt2 ||S|| sqrt(w(T)^2 - |diff|/2)",
        "pair", _ev_mm1),
    InequalityCatalogEntry(
        "MM2", "w(T^2) <= sqrt2 ||T|| sqrt(w(T)^2 - |diff|/2)",
        "single", _ev_mm2),
    InequalityCatalogEntry(
        "XY2", "||sum T||^2 <= sum_j w(Tj# sum T)", "family", _ev_xy2),
    InequalityCatalogEntry(
        "ST1", "||sum T||^2 <= 4 w(sum T) sum_j w(Tj)", "family", _ev_st1),
    InequalityCatalogEntry(
        "ST2", "sum commutes with each Tj#: factor 2 instead of 4",
        "commuting_family", _ev_st2),
    InequalityCatalogEntry(
        "BUZANO", "|<x,z><z,y>| <= (||x|| ||y|| + |<x,y>|)/2, ||z||_A = 1",
        "vec_triple", _ev_buzano),
    InequalityCatalogEntry(
        "MD1",
        "|<a,e><e,b>| <= (1+alpha)/2 ||a|| ||b|| + (1-alpha)/2 |<a,b>|",
        "vec_triple", _ev_md1, params=("alpha",)),
    InequalityCatalogEntry(
        "MD2", "r-th power form of MD1", "vec_triple", _ev_md2,
        params=("alpha", "r")),
    InequalityCatalogEntry(
        "RA2", "Re <a,b>_A <= ||a+b||_A^2 / 4", "vec_pair", _ev_ra2),
    InequalityCatalogEntry(
        "MD3",
        "w(T)^{2r} <= (1+alpha)/4 ||(T#T)^r + (TT#)^r|| + (1-alpha)/2 w(T^2)^r",
        "single", _ev_md3, params=("alpha", "r")),
    InequalityCatalogEntry(
        "AG", "scalar Young/power-mean chain (binding link reported)",
        "scalars", _ev_ag, params=("a", "b", "alpha", "r", "p")),
    InequalityCatalogEntry(
        "MRQ1.stated",
        "w(sum Tj^a Xj Sj^a)^r <= n^{r-1} ||X||^r sum ||Tj^{2pr}/p + Sj^{2qr}/q||^a",
        "positive_triples", _ev_mrq1_stated, params=("alpha", "r", "p"),
        flagged=True),
    InequalityCatalogEntry(
        "MRQ1.proof",
        "w(sum Tj^a Xj Sj^a)^r <= n^{r-1} ||X||^r sum ||Tj^{pr}/p + Sj^{qr}/q||^a",
        "positive_triples", _ev_mrq1_proof, params=("alpha", "r", "p"),
        variant="proof-consistent"),
    InequalityCatalogEntry(
        "FINAL1",
        "w(sum Tj^a Xj Sj^{1-a})^r <= n^{r-1} ||X||^r "
        "sum ||a Tj^r + (1-a) Sj^r||, r >= 2",
        "positive_triples", _ev_final1, params=("alpha", "r")),
    InequalityCatalogEntry(
        "SUBMULT", "||TS|| <= ||T|| ||S||", "pair", _ev_submult),
]

_BY_ID = {e.id: e for e in _CATALOG}


def list_catalog() -> list[InequalityCatalogEntry]:
    return list(_CATALOG)


def get_entry(entry_id: str) -> InequalityCatalogEntry:
    try:
        return _BY_ID[entry_id]
    except KeyError:
        raise KeyError(
            f"unknown inequality id {entry_id!r}; known: {sorted(_BY_ID)}"
        ) from None


# ---------------------------------------------------------------------------
# margin reports
# ---------------------------------------------------------------------------

@dataclass
class MarginReport:
    id: str
    lhs: float | None
    rhs: float | None
    margin: float | None
    status: str                      # Satisfied | Violated | Inapplicable
    tol_abs: float = TOL_ABS
    tol_rel: float = TOL_REL
    fingerprint: str = ""
    params: dict = field(default_factory=dict)
    operands: list | None = None     # serialized matrices, only on violation
    aux: dict = field(default_factory=dict)
    reason: str = ""

    def to_json(self) -> dict:
        out = {
            "id": self.id, "lhs": self.lhs, "rhs": self.rhs,
            "margin": self.margin, "status": self.status,
            "tol_abs": self.tol_abs, "tol_rel": self.tol_rel,
            "fingerprint": self.fingerprint,
        }
        if self.params:
            out["params"] = {k: float(v) for k, v in self.params.items()}
        if self.aux:
            out["aux"] = {k: float(v) for k, v in self.aux.items()}
        if self.operands is not None:
            out["operands"] = self.operands
        if self.reason:
            out["reason"] = self.reason
        return out


def is_violation(lhs: float, rhs: float, tol_abs: float = TOL_ABS,
                 tol_rel: float = TOL_REL) -> bool:
    return lhs > rhs + tol_abs + tol_rel * max(abs(lhs), abs(rhs))


def _serialize_operand(op) -> dict:
    arr = np.asarray(op, dtype=complex)
    if arr.ndim == 1:
        arr = arr.reshape(-1, 1)
    return matrix_to_json(arr)


def fingerprint_payload(entry_id: str, space: SemiHilbertSpace, operands,
                        params: dict) -> str:
    payload = {
        "id": entry_id,
        "metric": matrix_to_json(space.metric),
        "tol": space.tol,
        "operands": [_serialize_operand(op) for op in operands],
        "params": {k: params[k] for k in sorted(params)},
    }
    blob = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()


_ARITY = {
    "single": (1, 1), "pair": (2, 2), "quad": (4, 4),
    "commuting_pair": (2, 2), "normal_pair": (2, 2),
    "family": (2, None), "commuting_family": (2, None),
    "positive_triples": (3, None), "op_vector": (2, 2),
    "vec_pair": (2, 2), "vec_triple": (3, 3), "scalars": (0, 0),
}


def _check_signature(entry: InequalityCatalogEntry, operands) -> None:
    lo, hi = _ARITY[entry.operand_kind]
    n = len(operands)
    if n < lo or (hi is not None and n > hi):
        want = f"{lo}" if hi == lo else (f">={lo}" if hi is None else f"{lo}..{hi}")
        raise Inapplicable(
            f"{entry.id} expects {want} operand(s) ({entry.operand_kind}), got {n}"
        )
    if entry.operand_kind == "positive_triples" and n % 3:
        raise Inapplicable(
            f"{entry.id} expects full (T_j, X_j, S_j) triples, got {n} operands"
        )


def evaluate(entry_id: str, space: SemiHilbertSpace, operands,
             params: dict | None = None, tol_abs: float = TOL_ABS,
             tol_rel: float = TOL_REL, ctx: EvalContext | None = None,
             serialize_on_violation: bool = True) -> MarginReport:
    """Evaluate one catalog entry on concrete operands."""
    entry = get_entry(entry_id)
    params = dict(params or {})
    operands = list(operands)
    if ctx is None:
        ctx = EvalContext(space)
    fp = fingerprint_payload(entry_id, space, operands, params)
    try:
        _check_signature(entry, operands)
        lhs, rhs, aux = entry.evaluator(ctx, operands, params)
    except Inapplicable as exc:
        return MarginReport(
            id=entry_id, lhs=None, rhs=None, margin=None,
            status="Inapplicable", tol_abs=tol_abs, tol_rel=tol_rel,
            fingerprint=fp, params=params, reason=str(exc),
        )
    lhs, rhs = float(lhs), float(rhs)
    violated = is_violation(lhs, rhs, tol_abs, tol_rel)
    report = MarginReport(
        id=entry_id, lhs=lhs, rhs=rhs, margin=rhs - lhs,
        status="Violated" if violated else "Satisfied",
        tol_abs=tol_abs, tol_rel=tol_rel, fingerprint=fp,
        params=params, aux=aux,
    )
    if violated and serialize_on_violation:
        report.operands = [_serialize_operand(op) for op in operands]
    return report
