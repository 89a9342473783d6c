"""Cross-checks of proved statements on concrete instances.

Each check evaluates both sides of a statement independently and reports
"pass", "fail" or "inconclusive" (precondition not met, or window too short).
Since the statements are theorems a failure indicates a bug; with
``strict=True`` it raises CrosscheckFailure carrying the report.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field

from ..complexes.core import ModuleComplex, koszul_complex, module_as_complex, tensor_complexes
from ..complexes.depth import InconclusiveDepthError, homology_sup, koszul_depth_complex
from ..complexes.derived import derived_tensor
from ..rings.core import PresentedModule
from ..rings.duality import canonical_module, dual
from ..rings.functors import ext_module, ext_vanishes_from_resolution, tor_vanishes_from_resolution
from ..rings.measure import (INF, RegularSequenceError, codepth, cut_down_tilde, depth, is_regular_sequence,
                             measure, quotient_module, regular_sequence)
from ..rings.resolution import min_free_resolution, syzygy, transpose
from .vanishing import b_window, q_window

PASS, FAIL, INCONCLUSIVE = "pass", "fail", "inconclusive"
KINDS = ("negativeqr", "koszul_cutdown", "torcutdown", "cutdownMCM", "exttorall",
         "replacesyz", "mcmext", "transposeextend")


@dataclass
class CrosscheckReport:
    kind: str
    verdict: str
    values: dict = field(default_factory=dict)
    reason: str | None = None

    def __bool__(self):
        return self.verdict != FAIL

    def as_dict(self) -> dict:
        return {"kind": self.kind, "verdict": self.verdict, "values": _jsonable(self.values),
                "reason": self.reason}


class CrosscheckFailure(AssertionError):
    def __init__(self, report: CrosscheckReport):
        super().__init__(f"{report.kind} failed: {report.values} ({report.reason})")
        self.report = report


def _jsonable(v):
    if isinstance(v, float) and v in (INF, -INF):
        return "inf" if v > 0 else "-inf"
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, float) and v.is_integer():
        return int(v)
    return v


def is_cm_of_dim(X: PresentedModule, n: int) -> bool:
    """X is Cohen-Macaulay of dimension n; the zero module counts as such."""
    Xm = X.minimize()
    if Xm.is_zero():
        return True
    return Xm.dim == n and depth(Xm) == n


def is_mcm(X: PresentedModule) -> bool:
    return is_cm_of_dim(X, X.ring.dim)


def dagger(N: PresentedModule) -> PresentedModule:
    """Ext^{d-n}(N, omega_R) for N of dimension n."""
    R = N.ring
    return ext_module(N, canonical_module(R), R.dim - N.minimize().dim).minimize()


def _tor_low_vanish(M: PresentedModule, N: PresentedModule, top: int) -> bool:
    """Tor_i(M, N) = 0 for 1 <= i <= top."""
    if top < 1:
        return True
    res = min_free_resolution(M, top + 1)
    return all(tor_vanishes_from_resolution(res, N, i) for i in range(1, top + 1))


def _ext_low_vanish(M: PresentedModule, N: PresentedModule, top: int) -> bool:
    if top < 1:
        return True
    res = min_free_resolution(M, top + 1)
    return all(ext_vanishes_from_resolution(res, N, i) for i in range(1, top + 1))


def _sop(M: PresentedModule, seed: int):
    """A maximal R-regular sequence that is also M-regular, or None."""
    R = M.ring
    try:
        xs = regular_sequence(R, R.dim, seed=seed)
    except RegularSequenceError:
        return None
    return xs if is_regular_sequence(M, xs) else None


# --- individual statements

def negativeqr_complex(X: ModuleComplex) -> CrosscheckReport:
    """depth X >= -t with equality iff depth H_t(X) = 0, t = sup H(X)."""
    t = homology_sup(X)
    if t == -INF:
        return CrosscheckReport("negativeqr", INCONCLUSIVE, {}, "complex is exact")
    t = int(t)
    dX = koszul_depth_complex(X)
    dH = depth(X.homology(t))
    ok = dX >= -t and ((dX == -t) == (dH == 0))
    return CrosscheckReport("negativeqr", PASS if ok else FAIL,
                            {"sup": t, "depth": dX, "depth_H_sup": dH})


def _negativeqr(M, N, w, seed):
    D = derived_tensor(M, N, w)
    X = D.honest if D.honest is not None else D.complex
    rep = negativeqr_complex(X)
    rep.values["honest"] = D.certified_finite
    rep.values["window_sup"] = D.detected_sup()
    q = q_window(M, N, w)
    rep.values["q_nonzero"] = q.nonzero
    rep.values["tail_vanishes"] = q.tail_vanishes
    if M.ring.is_artinian and q.tail_vanishes and q.max_nonzero is not None:
        # the bounded complex agrees with M (x)^L N up to the window
        rep.values["artinian_rule_depth"] = -q.max_nonzero
    return rep


def koszul_cutdown(X, x=None, seed: int = 0) -> CrosscheckReport:
    """depth(X (x) K(x)) = depth X - 1 for x in the maximal ideal."""
    if isinstance(X, PresentedModule):
        X = module_as_complex(X)
    R = X.ring
    if x is None:
        rng = random.Random(seed)
        x = R.random_form(rng, 1 if 1 in R.S.degrees else min(R.S.degrees))
    x = R.S(x)
    if x.terms and x.degree() <= 0:
        return CrosscheckReport("koszul_cutdown", INCONCLUSIVE, {}, "x is not in the maximal ideal")
    if homology_sup(X) == -INF:
        return CrosscheckReport("koszul_cutdown", INCONCLUSIVE, {}, "complex is exact")
    K = koszul_complex([x], ring=R)
    dX = koszul_depth_complex(X)
    dXK = koszul_depth_complex(tensor_complexes(X, K))
    ok = dXK == dX - 1
    return CrosscheckReport("koszul_cutdown", PASS if ok else FAIL,
                            {"depth": dX, "depth_cut": dXK, "x": str(x)})


def _torcutdown(M, N, w, seed):
    R = M.ring
    d = R.dim
    if not is_mcm(M):
        return CrosscheckReport("torcutdown", INCONCLUSIVE, {}, "M is not MCM")
    xs = _sop(M, seed)
    if xs is None:
        return CrosscheckReport("torcutdown", INCONCLUSIVE, {}, "no regular sequence found")
    Mt = cut_down_tilde(M, xs)
    Mbar = quotient_module(M, xs)
    bt = b_window(Mt, N, w)
    bb = b_window(Mbar, N, w + d)
    shifted = sorted(i - d for i in bb.nonzero if i > d)
    shift_ok = bt.nonzero == shifted
    vals = {"xs": [str(x) for x in xs], "b_tilde": bt.nonzero, "b_quotient_shifted": shifted,
            "shift_identity": shift_ok}
    ok = shift_ok
    bM = b_window(M, N, w)
    vals["b_M"] = bM.nonzero
    if bM.certified and bt.certified:
        vals["b_equal"] = bM.max_nonzero == bt.max_nonzero
        ok = ok and vals["b_equal"]
    elif bM.tail_vanishes and bt.tail_vanishes and min(bM.margin(), bt.margin()) > d:
        vals["b_equal_window"] = bM.max_nonzero == bt.max_nonzero
    qM = q_window(M, N, w)
    if qM.certified and qM.max_nonzero is not None:
        qt = q_window(Mt, N, w)
        vals["q_tilde_le_q"] = all(i <= qM.max_nonzero for i in qt.nonzero)
        ok = ok and vals["q_tilde_le_q"]
    return CrosscheckReport("torcutdown", PASS if ok else FAIL, vals)


def cutdown_conditions(M: PresentedModule, N: PresentedModule, xs) -> dict:
    """The four conditions of the cut-down equivalence for MCM M, N."""
    R = M.ring
    d = R.dim
    Mt = cut_down_tilde(M, xs)
    Mbar = quotient_module(M, xs)
    out = {
        "c1": is_mcm(M.tensor(N)) and _tor_low_vanish(M, N, d),
        "c2": _tor_low_vanish(Mbar, N, d),
        "c3": is_mcm(Mt.tensor(N)),
    }
    if R.is_cm:
        out["c4"] = _ext_low_vanish(Mt, dual(N, "canonical"), d)
    return out


def _cutdownMCM(M, N, w, seed):
    if not (is_mcm(M) and is_mcm(N)):
        return CrosscheckReport("cutdownMCM", INCONCLUSIVE, {}, "M and N must be MCM")
    xs = _sop(M, seed)
    if xs is None:
        return CrosscheckReport("cutdownMCM", INCONCLUSIVE, {}, "no regular sequence found")
    conds = cutdown_conditions(M, N, xs)
    ok = len(set(conds.values())) == 1
    conds["xs"] = [str(x) for x in xs]
    return CrosscheckReport("cutdownMCM", PASS if ok else FAIL, conds)


def _decided(rep) -> bool:
    return bool(rep.nonzero) or rep.certified


def _exttorall(M, N, w, seed):
    R = M.ring
    if not R.is_cm:
        return CrosscheckReport("exttorall", INCONCLUSIVE, {}, "R is not CM")
    if not is_mcm(N):
        return CrosscheckReport("exttorall", INCONCLUSIVE, {}, "N is not MCM")
    Nv = dual(N, "canonical")
    q = q_window(M, N, w)
    b = b_window(M, Nv, w)
    tensor_mcm = is_mcm(M.tensor(N))
    left = tensor_mcm and not q.nonzero
    right = not b.nonzero
    vals = {"tensor_mcm": tensor_mcm, "q_nonzero": q.nonzero, "q_certification": q.certification,
            "b_nonzero": b.nonzero, "b_certification": b.certification, "left": left, "right": right}
    left_decided = (not tensor_mcm) or _decided(q)
    right_decided = _decided(b)
    vals["certified"] = left_decided and right_decided
    if left == right:
        return CrosscheckReport("exttorall", PASS, vals)
    if left_decided and right_decided:
        return CrosscheckReport("exttorall", FAIL, vals)
    return CrosscheckReport("exttorall", INCONCLUSIVE, vals, "sides disagree on uncertified windows")


def _replacesyz(M, N, w, seed):
    R = M.ring
    cM, cN = codepth(M), codepth(N)
    if cM == -INF or cN == -INF:
        return CrosscheckReport("replacesyz", INCONCLUSIVE, {}, "zero module")
    cM, cN = int(cM), int(cN)
    SM, SN = syzygy(M, cM), syzygy(N, cN)
    vals = {"codepth_M": cM, "codepth_N": cN}
    try:
        D1 = derived_tensor(M, N, w)
        d1 = D1.depth()
        D2 = derived_tensor(SM, SN, w)
        d2 = D2.depth()
    except InconclusiveDepthError as exc:
        return CrosscheckReport("replacesyz", INCONCLUSIVE, vals, str(exc))
    if D2.homology_vanishes(0) or not (D1.sound() and D2.sound()):
        return CrosscheckReport("replacesyz", INCONCLUSIVE, vals, "derived tensor not bounded in window")
    left = R.depth - d1 <= cM + cN
    right = d2 >= R.dim
    vals.update({"depth_derived": d1, "depth_syzygy_derived": d2, "left": left, "right": right,
                 "honest": D1.certified_finite and D2.certified_finite})
    if left == right:
        return CrosscheckReport("replacesyz", PASS, vals)
    if vals["honest"]:
        return CrosscheckReport("replacesyz", FAIL, vals)
    return CrosscheckReport("replacesyz", INCONCLUSIVE, vals, "sides disagree on a truncated complex")


def _cm_dim(N: PresentedModule) -> int | None:
    Nm = N.minimize()
    if Nm.is_zero():
        return None
    n = Nm.dim
    return n if depth(Nm) == n else None


def _mcmext(M, N, w, seed):
    R = M.ring
    if not R.is_cm:
        return CrosscheckReport("mcmext", INCONCLUSIVE, {}, "R is not CM")
    n = _cm_dim(N)
    if n is None:
        return CrosscheckReport("mcmext", INCONCLUSIVE, {}, "N is not CM")
    Nd = dagger(N)
    exts = [ext_module(M, N, i) for i in range(1, n + 1)]
    left = all(E.is_zero() for E in exts)
    finite = all(E.dim <= 0 for E in exts)
    right = is_cm_of_dim(M.tensor(Nd), n)
    vals = {"n": n, "ext_vanish": left, "ext_finite_length": finite, "tensor_dagger_cm": right}
    ok = (not left or right) and (not (right and finite) or left)
    return CrosscheckReport("mcmext", PASS if ok else FAIL, vals)


def _transposeextend(M, N, w, seed):
    R = M.ring
    if not R.is_cm:
        return CrosscheckReport("transposeextend", INCONCLUSIVE, {}, "R is not CM")
    n = _cm_dim(N)
    if n is None:
        return CrosscheckReport("transposeextend", INCONCLUSIVE, {}, "N is not CM")
    left = is_cm_of_dim(M.tensor(N), n)
    right = is_cm_of_dim(transpose(M).tensor(dagger(N)), n)
    vals = {"n": n, "tensor_cm": left, "transpose_tensor_dagger_cm": right}
    return CrosscheckReport("transposeextend", PASS if left == right else FAIL, vals)


_DISPATCH = {
    "negativeqr": _negativeqr,
    "torcutdown": _torcutdown,
    "cutdownMCM": _cutdownMCM,
    "exttorall": _exttorall,
    "replacesyz": _replacesyz,
    "mcmext": _mcmext,
    "transposeextend": _transposeextend,
}


def lemma_crosscheck(kind: str, M, N=None, w: int = 6, *, x=None, seed: int = 0,
                     strict: bool = True) -> CrosscheckReport:
    """Evaluate the named statement on (M, N) (or on a complex and x for koszul_cutdown)."""
    if kind not in KINDS:
        raise ValueError(f"unknown crosscheck {kind!r}; expected one of {KINDS}")
    if kind == "koszul_cutdown":
        rep = koszul_cutdown(M, x=x, seed=seed)
    else:
        if N is None:
            raise ValueError(f"{kind} needs two modules")
        if M.is_zero() or N.is_zero():
            rep = CrosscheckReport(kind, INCONCLUSIVE, {}, "zero module")
        else:
            rep = _DISPATCH[kind](M, N, w, seed)
    if strict and rep.verdict == FAIL:
        raise CrosscheckFailure(rep)
    return rep
