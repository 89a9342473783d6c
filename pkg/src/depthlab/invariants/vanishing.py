"""Tor and Ext modules and windowed vanishing reports for q_R and b_R."""
from __future__ import annotations

from dataclasses import dataclass, field

from ..rings.core import PresentedModule
from ..rings.functors import (ext_module, ext_vanishes_from_resolution, tor_module,
                              tor_vanishes_from_resolution)
from ..rings.resolution import min_free_resolution

EXACT_PD = "exact-via-finite-pd"
EXACT_ID = "exact-via-finite-id"
WINDOW = "window-only"

__all__ = ["VanishingReport", "tor_module", "ext_module", "q_window", "b_window", "pd_detect",
           "EXACT_PD", "EXACT_ID", "WINDOW"]


@dataclass
class VanishingReport:
    """Which Tor_i / Ext^i with 1 <= i <= w are nonzero.

    ``max_nonzero`` is the windowed sup over 0 <= i <= w (None when every
    module in the window vanishes) and ``tail_vanishes`` says that it sits
    strictly below w, so the window ends in a run of zeros.
    """

    kind: str
    window: int
    nonzero: list[int]
    zeroth_nonzero: bool
    certification: str
    bound: int | None = None
    notes: list[str] = field(default_factory=list)

    @property
    def max_nonzero(self) -> int | None:
        if self.nonzero:
            return max(self.nonzero)
        return 0 if self.zeroth_nonzero else None

    @property
    def tail_vanishes(self) -> bool:
        m = self.max_nonzero
        return m is not None and m < self.window

    @property
    def certified(self) -> bool:
        return self.certification != WINDOW

    def margin(self) -> int | None:
        """Number of trailing zero indices in the window."""
        m = self.max_nonzero
        return None if m is None else self.window - m

    def as_dict(self) -> dict:
        return {"kind": self.kind, "window": self.window, "nonzero": list(self.nonzero),
                "zeroth_nonzero": self.zeroth_nonzero, "max_nonzero": self.max_nonzero,
                "tail_vanishes": self.tail_vanishes, "certification": self.certification,
                "bound": self.bound, "notes": list(self.notes)}


def pd_detect(M: PresentedModule, w: int) -> int | None:
    """pd(M) if a free syzygy appears among Omega^0..Omega^w, else None.

    A finite pd never exceeds depth R, so resolving past it is wasted work.
    """
    res = min_free_resolution(M, min(w, max(M.ring.depth, 0)), decide=True)
    return res.pd if res.complete else None


def _cheaper_side(M: PresentedModule, N: PresentedModule, probe: int = 3) -> str:
    """The side whose resolution grows more slowly over the first few steps."""
    bm = min_free_resolution(M, probe).betti()
    bn = min_free_resolution(N, probe).betti()
    return "left" if sum(bm) <= sum(bn) else "right"


def q_window(M: PresentedModule, N: PresentedModule, w: int, resolve: str = "auto") -> VanishingReport:
    """Tor_i(M, N) for 0 <= i <= w from a minimal resolution of M or of N.

    Tor is balanced, so either side may be resolved; ``resolve`` is "left",
    "right" or "auto" (the side whose Betti numbers grow more slowly).
    """
    if w < 1:
        raise ValueError("window must be at least 1")
    if resolve not in ("auto", "left", "right"):
        raise ValueError(f"unknown side {resolve!r}")
    if resolve == "auto":
        resolve = _cheaper_side(M, N)
    if resolve == "right":
        M, N = N, M
    res = min_free_resolution(M, w + 1, decide=True)
    nonzero = [i for i in range(1, w + 1) if not tor_vanishes_from_resolution(res, N, i)]
    zeroth = not tor_vanishes_from_resolution(res, N, 0)
    pdM = res.pd if res.complete and res.length <= w else None
    pdN = pd_detect(N, w) if pdM is None else None
    cert, bound, notes = WINDOW, None, []
    if pdM is not None or pdN is not None:
        cands = [p for p in (pdM, pdN) if p is not None]
        bound = min(cands)
        cert = EXACT_PD
        notes.append(f"Tor vanishes above {bound} (finite projective dimension)")
    return VanishingReport("tor", w, nonzero, zeroth, cert, bound, notes)


def b_window(M: PresentedModule, N: PresentedModule, w: int) -> VanishingReport:
    """Ext^i(M, N) for 0 <= i <= w from the minimal resolution of M."""
    if w < 1:
        raise ValueError("window must be at least 1")
    R = M.ring
    res = min_free_resolution(M, w + 1, decide=True)
    nonzero = [i for i in range(1, w + 1) if not ext_vanishes_from_resolution(res, N, i)]
    zeroth = not ext_vanishes_from_resolution(res, N, 0)
    cert, bound, notes = WINDOW, None, []
    pdM = res.pd if res.complete and res.length <= w else None
    if pdM is not None:
        cert, bound = EXACT_PD, pdM
        notes.append(f"Ext vanishes above pd(M) = {pdM}")
    elif R.is_gorenstein and R.dim <= w and pd_detect(N, w) is not None:
        # over a Gorenstein ring finite pd of N forces id(N) = depth R = d
        cert, bound = EXACT_ID, R.dim
        notes.append(f"Ext vanishes above id(N) = {R.dim}")
    return VanishingReport("ext", w, nonzero, zeroth, cert, bound, notes)
