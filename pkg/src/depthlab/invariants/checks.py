"""Per-pair checks of depth formulas, (UBC)/(UAC) bounds, total reflexivity
and the q_R formula at the maximal ideal.

Verdicts are "holds", "fails" or "inconclusive".  A "fails" verdict is only
returned when every quantity entering the comparison is certified; window-only
data can at most make a check inconclusive.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from ..complexes.depth import InconclusiveDepthError
from ..complexes.derived import derived_tensor
from ..grobner.matrix import Matrix
from ..grobner.ops import AugmentedBasis, kernel_of_map, vec_degree
from ..rings.core import PresentedModule
from ..rings.duality import bidual_map
from ..rings.measure import INF, measure
from .vanishing import VanishingReport, b_window, q_window, tor_module

HOLDS, FAILS, INCONCLUSIVE = "holds", "fails", "inconclusive"
MODES = ("ldep", "rdep", "dep")


def _num(x):
    if x is None:
        return None
    if isinstance(x, float) and math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return int(x)


@dataclass
class PairCheckReport:
    check: str
    mode: str | None = None
    depth_M: float | None = None
    depth_N: float | None = None
    depth_T: float | None = None
    codepth_M: float | None = None
    codepth_N: float | None = None
    codepth_T: float | None = None
    vanishing: VanishingReport | None = None
    lhs: float | None = None
    rhs: float | None = None
    verdict: str = INCONCLUSIVE
    reason: str | None = None
    extra: dict = field(default_factory=dict)

    @property
    def certified(self) -> bool:
        return self.vanishing is not None and self.vanishing.certified

    def as_dict(self) -> dict:
        out = {"check": self.check, "mode": self.mode}
        for k in ("depth_M", "depth_N", "depth_T", "codepth_M", "codepth_N", "codepth_T", "lhs", "rhs"):
            out[k] = _num(getattr(self, k))
        out["vanishing"] = self.vanishing.as_dict() if self.vanishing else None
        out["verdict"] = self.verdict
        out["reason"] = self.reason
        out["extra"] = {k: _num(v) if isinstance(v, float) else v for k, v in self.extra.items()}
        return out


def _compare(mode: str, lhs, rhs) -> bool:
    if mode == "ldep":
        return lhs <= rhs
    if mode == "rdep":
        return lhs >= rhs
    return lhs == rhs


def _check_mode(mode: str) -> None:
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}; expected one of {MODES}")


def _fill_measures(rep: PairCheckReport, M: PresentedModule, N: PresentedModule) -> None:
    mM, mN = measure(M), measure(N)
    rep.depth_M, rep.depth_N = mM.depth, mN.depth
    rep.codepth_M, rep.codepth_N = mM.codepth, mN.codepth


def _inconclusive(rep: PairCheckReport, reason: str) -> PairCheckReport:
    rep.verdict = INCONCLUSIVE
    rep.reason = reason
    return rep


def check_depth_formula(M: PresentedModule, N: PresentedModule, w: int, mode: str = "dep") -> PairCheckReport:
    """codepth(M (x) N) against codepth M + codepth N for a Tor-independent pair.

    ldep is codepth(M (x) N) <= codepth M + codepth N, rdep the reverse.
    """
    _check_mode(mode)
    rep = PairCheckReport("depth-formula", mode)
    if M.is_zero() or N.is_zero():
        return _inconclusive(rep, "zero module")
    q = q_window(M, N, w)
    rep.vanishing = q
    _fill_measures(rep, M, N)
    if q.nonzero:
        return _inconclusive(rep, f"not Tor-independent: Tor_i != 0 for i in {q.nonzero}")
    if not q.certified:
        return _inconclusive(rep, f"Tor_i = 0 for 1 <= i <= {w} only on the window (no finite pd detected)")
    T = M.tensor(N).minimize()
    if T.is_zero():
        return _inconclusive(rep, "M (x) N is zero")
    mT = measure(T)
    rep.depth_T, rep.codepth_T = mT.depth, mT.codepth
    rep.lhs, rep.rhs = mT.codepth, rep.codepth_M + rep.codepth_N
    rep.verdict = HOLDS if _compare(mode, rep.lhs, rep.rhs) else FAILS
    return rep


def check_derived_formula(M: PresentedModule, N: PresentedModule, w: int, mode: str = "dep",
                          method: str = "auto") -> PairCheckReport:
    """codepth(M (x)^L N) against codepth M + codepth N, with the depth of the
    derived tensor product computed on the truncated (or honest) complex."""
    _check_mode(mode)
    R = M.ring
    rep = PairCheckReport("derived-formula", mode)
    if M.is_zero() or N.is_zero():
        return _inconclusive(rep, "zero module")
    q = q_window(M, N, w)
    rep.vanishing = q
    _fill_measures(rep, M, N)
    if not q.tail_vanishes:
        return _inconclusive(rep, f"Tor does not vanish at the top of the window {w}")
    D = derived_tensor(M, N, w)
    try:
        dD = D.depth(method=method)
    except InconclusiveDepthError as exc:
        return _inconclusive(rep, str(exc))
    rep.depth_T = dD
    rep.codepth_T = R.depth - dD
    rep.lhs, rep.rhs = rep.codepth_T, rep.codepth_M + rep.codepth_N
    rep.extra["honest"] = D.certified_finite
    rep.extra["homology_sup"] = D.detected_sup()
    if _compare(mode, rep.lhs, rep.rhs):
        rep.verdict = HOLDS
    elif D.certified_finite and q.certified:
        rep.verdict = FAILS
    else:
        return _inconclusive(rep, "comparison fails on uncertified window data")
    return rep


def _b_precondition(b: VanishingReport, d: int) -> str | None:
    if b.max_nonzero is None:
        return "every Ext^i in the window vanishes"
    if b.certified:
        return None
    if b.tail_vanishes and b.margin() >= max(d, 1):
        return None
    return f"b not certified finite (needs a vanishing tail of length >= {max(d, 1)} in the window)"


def check_ubc(M: PresentedModule, N: PresentedModule, w: int) -> PairCheckReport:
    """b_R(M, N) >= codepth M when b_R(M, N) is finite."""
    R = M.ring
    rep = PairCheckReport("ubc")
    if M.is_zero() or N.is_zero():
        return _inconclusive(rep, "zero module")
    b = b_window(M, N, w)
    rep.vanishing = b
    _fill_measures(rep, M, N)
    why = _b_precondition(b, R.dim)
    if why:
        return _inconclusive(rep, why)
    rep.lhs, rep.rhs = b.max_nonzero, rep.codepth_M
    if rep.lhs >= rep.rhs:
        rep.verdict = HOLDS
    elif b.certified:
        rep.verdict = FAILS
    else:
        return _inconclusive(rep, "b < codepth M on uncertified window data")
    return rep


def check_uac_bound(M: PresentedModule, N: PresentedModule, w: int) -> PairCheckReport:
    """b_R(M, N) <= codepth M and b_R(M, N) <= dim R for finite b_R(M, N)."""
    R = M.ring
    rep = PairCheckReport("uac")
    if M.is_zero() or N.is_zero():
        return _inconclusive(rep, "zero module")
    b = b_window(M, N, w)
    rep.vanishing = b
    _fill_measures(rep, M, N)
    why = _b_precondition(b, R.dim)
    if why:
        return _inconclusive(rep, why)
    bv = b.max_nonzero
    rep.lhs, rep.rhs = bv, rep.codepth_M
    rep.extra["b_le_codepth"] = bv <= rep.codepth_M
    rep.extra["b_le_dim"] = bv <= R.dim
    rep.extra["dim"] = R.dim
    if rep.extra["b_le_codepth"] and rep.extra["b_le_dim"]:
        rep.verdict = HOLDS
    elif b.certified:
        rep.verdict = FAILS
    else:
        return _inconclusive(rep, "bound fails on uncertified window data")
    return rep


# --- total reflexivity

@dataclass
class ReflexivityReport:
    biduality_iso: bool
    kernel_zero: bool
    cokernel_zero: bool
    b_MR: VanishingReport
    b_MstarR: VanishingReport
    verdict: str
    dual: PresentedModule = field(repr=False, default=None)

    def as_dict(self) -> dict:
        return {"biduality_iso": self.biduality_iso, "kernel_zero": self.kernel_zero,
                "cokernel_zero": self.cokernel_zero, "b_MR": self.b_MR.as_dict(),
                "b_MstarR": self.b_MstarR.as_dict(), "verdict": self.verdict}


def _presented_dual(M: PresentedModule):
    """M* presented on the columns of B, with the relation matrix C of those columns."""
    Mm, B, theta = bidual_map(M)
    R = Mm.ring
    S = R.S
    dual_shifts = [-d for d in Mm.degrees]
    gens = [c for c in B.cols if c]
    degs = [vec_degree(S, c, dual_shifts) for c in gens]
    Bm = Matrix(S, Mm.ngens, len(gens), gens)
    C = kernel_of_map(Bm, dual_shifts, degs, R.relations) if gens else Matrix.zero(S, 0, 0)
    return Mm, Bm, degs, C


def biduality(M: PresentedModule) -> tuple[bool, bool, PresentedModule]:
    """(kernel zero, cokernel zero, M*) for the natural map M -> M**."""
    Mm, B, degs, C = _presented_dual(M)
    R = Mm.ring
    S = R.S
    Mstar = PresentedModule(R, degs, C.cols)
    if Mm.ngens == 0:
        return True, True, Mstar
    theta = B.transpose()
    star_shifts = [-d for d in degs]
    # kernel of F_0 -> R^s modulo the relations of M
    if theta.ncols and theta.nrows:
        K = kernel_of_map(theta, star_shifts, list(Mm.degrees), R.relations)
        kernel_zero = all(Mm.contains(k) for k in K.cols)
    else:
        K = Matrix.identity(S, Mm.ngens)
        kernel_zero = all(Mm.contains(k) for k in K.cols)
    # M** = ker(C^T) inside R^s; compare with the image of theta
    if not degs:
        return kernel_zero, True, Mstar
    if C.ncols:
        CT = C.transpose()
        cdeg = [-vec_degree(S, c, degs) for c in C.cols]
        D = kernel_of_map(CT, cdeg, star_shifts, R.relations)
        targets = D.cols
    else:
        z = S.zero_exp
        targets = [{(j, z): R.field.one} for j in range(len(degs))]
    img = [c for c in theta.cols if c]
    if not img:
        cokernel_zero = all(not R.reduce_vec(t) for t in targets)
    else:
        AB = AugmentedBasis(S, img, star_shifts, relations=R.relations, track=False)
        cokernel_zero = all(AB.contains(t) for t in targets)
    return kernel_zero, cokernel_zero, Mstar


def totally_reflexive(M: PresentedModule, w: int) -> ReflexivityReport:
    R = M.ring
    Rf = PresentedModule.free(R, [0])
    ker0, cok0, Mstar = biduality(M)
    b1 = b_window(M, Rf, w)
    b2 = b_window(Mstar, Rf, w) if not Mstar.is_zero() else VanishingReport("ext", w, [], False, "exact-via-finite-pd", 0)
    iso = ker0 and cok0
    if not iso or b1.nonzero or b2.nonzero:
        verdict = "not-totally-reflexive"
    elif b1.certified and b2.certified:
        verdict = "totally-reflexive"
    else:
        verdict = INCONCLUSIVE
    return ReflexivityReport(iso, ker0, cok0, b1, b2, verdict, Mstar)


# --- q_R at the maximal ideal

def qr_formula_at_m(M: PresentedModule, N: PresentedModule, w: int) -> PairCheckReport:
    """q_R(M, N) = depth R - depth M - depth N under finite length of Tor_q and derived dep."""
    R = M.ring
    rep = PairCheckReport("qr-formula")
    if M.is_zero() or N.is_zero():
        return _inconclusive(rep, "zero module")
    q = q_window(M, N, w)
    rep.vanishing = q
    _fill_measures(rep, M, N)
    if not q.certified:
        return _inconclusive(rep, "q_R not certified (no finite pd detected)")
    qv = q.max_nonzero
    if qv is None:
        return _inconclusive(rep, "all Tor vanish")
    Tq = tor_module(M, N, qv)
    rep.extra["tor_q_dim"] = Tq.dim
    if Tq.dim != 0:
        return _inconclusive(rep, f"Tor_{qv} does not have finite length")
    dep = check_derived_formula(M, N, w, "dep")
    rep.extra["derived_dep"] = dep.verdict
    if dep.verdict != HOLDS:
        return _inconclusive(rep, f"derived dep not verified: {dep.reason or dep.verdict}")
    rep.depth_T = dep.depth_T
    rep.lhs = qv
    rep.rhs = R.depth - rep.depth_M - rep.depth_N
    rep.verdict = HOLDS if rep.lhs == rep.rhs else FAILS
    return rep
