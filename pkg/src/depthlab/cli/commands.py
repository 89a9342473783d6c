"""Command implementations and report emission."""
from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass, field

from ..complexes.core import ModuleComplex
from ..complexes.depth import depth_complex, homology_sup
from ..complexes.derived import DerivedTensorResult
from ..invariants import (CrosscheckFailure, KINDS, b_window, check_depth_formula, check_derived_formula,
                          check_uac_bound, check_ubc, lemma_crosscheck, q_window, totally_reflexive)
from ..rings.core import PresentedModule, PresentedRing
from ..rings.functors import ext_module, tor_module
from ..rings.measure import _candidate_degrees, measure
from ..rings.resolution import min_free_resolution

SCHEMA = "depthlab/1"
CHECKS = ("ldep", "rdep", "dep", "derived-ldep", "derived-rdep", "derived-dep", "ubc", "uac", "tr")
FAIL_VERDICTS = ("fails", "fail")


class UserError(ValueError):
    """Bad command-line input; reported with exit code 2."""


def jsonable(v):
    if isinstance(v, float):
        if math.isinf(v):
            return "inf" if v > 0 else "-inf"
        if v.is_integer():
            return int(v)
        return v
    if isinstance(v, dict):
        return {str(k): jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [jsonable(x) for x in v]
    if isinstance(v, (bool, int, str)) or v is None:
        return v
    return str(v)


@dataclass
class Report:
    command: str
    inputs: dict
    window: int | None
    certification: str | None
    values: dict = field(default_factory=dict)
    verdict: str | None = None

    def as_dict(self) -> dict:
        return {"schema": SCHEMA, "command": self.command, "inputs": jsonable(self.inputs),
                "window": self.window, "certification": self.certification,
                "values": jsonable(self.values), "verdict": self.verdict}

    @property
    def failed(self) -> bool:
        return self.verdict in FAIL_VERDICTS


def _text_lines(d: dict, indent: int = 0) -> list[str]:
    out = []
    pad = "  " * indent
    width = max((len(str(k)) for k in d), default=0)
    for k, v in d.items():
        if isinstance(v, dict) and v:
            out.append(f"{pad}{k}:")
            out.extend(_text_lines(v, indent + 1))
        else:
            if isinstance(v, list):
                v = "[" + ", ".join(str(x) for x in v) + "]"
            out.append(f"{pad}{str(k).ljust(width)}  {v}")
    return out


def emit_report(report: Report | list, fmt: str = "json") -> bytes:
    reports = report if isinstance(report, list) else [report]
    if fmt == "json":
        payload = [r.as_dict() for r in reports]
        body = payload[0] if not isinstance(report, list) else payload
        return (json.dumps(body, indent=2, sort_keys=True) + "\n").encode()
    if fmt == "text":
        blocks = []
        for r in reports:
            d = r.as_dict()
            head = [f"== {d['command']} ==",
                    f"inputs         {', '.join(f'{k}={v}' for k, v in d['inputs'].items())}",
                    f"window         {d['window']}",
                    f"certification  {d['certification']}",
                    f"verdict        {d['verdict']}"]
            blocks.append("\n".join(head + _text_lines(d["values"], 1)))
        return ("\n\n".join(blocks) + "\n").encode()
    raise UserError(f"unknown format {fmt!r}")


# --- summaries

def module_summary(M: PresentedModule) -> dict:
    Mm = M.minimize()
    return {"ngens": Mm.ngens, "nrels": Mm.nrels, "generator_degrees": list(Mm.degrees),
            "is_zero": Mm.ngens == 0, "dim": Mm.dim, "length": Mm.length() if Mm.dim <= 0 else None}


def _describe(obj, label) -> str:
    if isinstance(obj, PresentedModule):
        return f"{label} ({obj.ngens} generators over {obj.ring!r})"
    if isinstance(obj, ModuleComplex):
        return f"{label} (complex in degrees {obj.lo}..{obj.hi})"
    return str(label)


def _need(args, kinds, cmd):
    if len(args) != len(kinds):
        raise UserError(f"{cmd} expects {len(kinds)} argument(s), got {len(args)}")
    for a, k in zip(args, kinds):
        if k == "module" and not isinstance(a, PresentedModule):
            raise UserError(f"{cmd}: expected a module, got {type(a).__name__}")
    mods = [a for a in args if isinstance(a, PresentedModule)]
    if len({id(m.ring) for m in mods}) > 1 and len({m.ring for m in mods}) > 1:
        raise UserError(f"{cmd}: modules live over different rings")


# --- commands

def cmd_resolve(M, window):
    res = min_free_resolution(M, window, decide=True)
    graded = [{str(d): c for d, c in sorted(g.items())} for g in res.graded_betti()]
    return Report("resolve", {}, window, "complete" if res.complete else "window-only",
                  {"betti": res.betti(), "graded_betti": graded, "complete": res.complete, "pd": res.pd})


def _functor(name, M, N, window, options):
    idx = options.get("index")
    if idx is not None:
        if idx < 0:
            raise UserError("index must be nonnegative")
        T = (tor_module if name == "tor" else ext_module)(M, N, idx)
        return Report(name, {"index": idx}, None, "exact", {"module": module_summary(T)})
    rep = (q_window if name == "tor" else b_window)(M, N, window)
    return Report(name, {}, window, rep.certification, rep.as_dict())


def cmd_depth(X, window):
    if isinstance(X, PresentedModule):
        m = measure(X)
        return Report("depth", {}, None, "exact", {"depth": m.depth, "dim": m.dim})
    if isinstance(X, DerivedTensorResult):
        vals = {"honest": X.certified_finite, "homology_sup": X.detected_sup(), "window": X.window}
        try:
            vals["depth"] = X.depth()
            cert = "exact" if X.certified_finite else "window-only"
        except ValueError as exc:
            vals["depth"] = None
            vals["reason"] = str(exc)
            cert = "inconclusive"
        return Report("depth", {}, X.window, cert, vals)
    if isinstance(X, ModuleComplex):
        return Report("depth", {}, None, "exact",
                      {"depth": depth_complex(X), "homology_sup": homology_sup(X)})
    raise UserError("depth expects a module or a complex")


def cmd_measure(M):
    m = measure(M)
    vals = m.as_dict()
    vals["mu"] = M.mu
    vals["is_free"] = M.is_free()
    return Report("measure", {}, None, "exact", vals)


def cmd_check(mode, args, window):
    if mode not in CHECKS:
        raise UserError(f"unknown check {mode!r}; expected one of {', '.join(CHECKS)}")
    if mode == "tr":
        _need(args, ["module"], "check tr")
        r = totally_reflexive(args[0], window)
        cert = "exact" if r.b_MR.certified and r.b_MstarR.certified else "window-only"
        return Report("check", {"mode": mode}, window, cert, r.as_dict(), r.verdict)
    _need(args, ["module", "module"], f"check {mode}")
    M, N = args
    if mode in ("ldep", "rdep", "dep"):
        r = check_depth_formula(M, N, window, mode)
    elif mode.startswith("derived-"):
        r = check_derived_formula(M, N, window, mode.split("-", 1)[1])
    elif mode == "ubc":
        r = check_ubc(M, N, window)
    else:
        r = check_uac_bound(M, N, window)
    cert = r.vanishing.certification if r.vanishing else None
    return Report("check", {"mode": mode}, window, cert, r.as_dict(), r.verdict)


def cmd_crosscheck(kind, args, window, seed, options):
    if kind not in KINDS:
        raise UserError(f"unknown lemma {kind!r}; expected one of {', '.join(KINDS)}")
    if kind == "koszul_cutdown":
        if len(args) != 1:
            raise UserError("koszul_cutdown expects one module or complex")
        X = args[0]
        if isinstance(X, DerivedTensorResult):
            X = X.honest if X.honest is not None else X.complex
        rep = lemma_crosscheck(kind, X, None, window, seed=seed, strict=False)
    else:
        _need(args, ["module", "module"], f"crosscheck {kind}")
        rep = lemma_crosscheck(kind, args[0], args[1], window, seed=seed, strict=False)
    out = Report("crosscheck", {"lemma": kind}, window, None, rep.as_dict(), rep.verdict)
    if rep.verdict == "fail":
        raise CrosscheckFailure(rep)
    return out


# --- survey

def random_module(R: PresentedRing, rng: random.Random) -> PresentedModule:
    """A small random module: k, R, a cyclic quotient, or the cokernel of a 1x2 or 2x2 matrix."""
    degs = _candidate_degrees(R) or [1]
    low = degs[0]
    kind = rng.randrange(6)
    if kind == 0:
        return PresentedModule.residue_field(R)
    if kind == 1:
        return PresentedModule.free(R, [0])
    if kind in (2, 3):
        gens = [R.random_form(rng, rng.choice(degs[:2])) for _ in range(1 + (kind == 3))]
        return PresentedModule.quotient(R, gens)
    if kind == 4:
        row = [R.random_form(rng, low), R.random_form(rng, low)]
        return PresentedModule.cokernel(R, [row], [0])
    rows = [[R.random_form(rng, low), R.random_form(rng, low)],
            [R.random_form(rng, low), R.random_form(rng, low)]]
    return PresentedModule.cokernel(R, rows, [0, 0])


def cmd_survey(check, R, window, seed, options):
    samples = int(options.get("samples", 100))
    if samples < 1:
        raise UserError("samples must be positive")
    if check not in CHECKS and check not in KINDS:
        raise UserError(f"unknown survey check {check!r}")
    rng = random.Random(seed)
    counts: dict[str, int] = {}
    failures = []
    for i in range(samples):
        M, N = random_module(R, rng), random_module(R, rng)
        try:
            if check in KINDS:
                args = [M] if check == "koszul_cutdown" else [M, N]
                v = lemma_crosscheck(check, *args, w=window, seed=seed + i, strict=False).verdict
            else:
                v = cmd_check(check, [M] if check == "tr" else [M, N], window).verdict or "none"
        except CrosscheckFailure:
            v = "fail"
        counts[v] = counts.get(v, 0) + 1
        if v in FAIL_VERDICTS:
            failures.append(i)
    verdict = "fails" if failures else "holds"
    return Report("survey", {"check": check, "samples": samples, "seed": seed}, window, "per-pair",
                  {"counts": dict(sorted(counts.items())), "failed_samples": failures}, verdict)


# --- dispatch

def run_command(cmd: str, args: list, options: dict, window: int = 6, seed: int = 0,
                labels: list | None = None) -> Report:
    labels = labels or [str(a) for a in args]
    if window < 1:
        raise UserError("window must be at least 1")
    if cmd == "resolve":
        _need(args, ["module"], cmd)
        rep = cmd_resolve(args[0], window)
    elif cmd in ("tor", "ext"):
        _need(args, ["module", "module"], cmd)
        rep = _functor(cmd, args[0], args[1], window, options)
    elif cmd == "qr":
        _need(args, ["module", "module"], cmd)
        r = q_window(args[0], args[1], window)
        rep = Report("qr", {}, window, r.certification, r.as_dict())
    elif cmd == "br":
        _need(args, ["module", "module"], cmd)
        r = b_window(args[0], args[1], window)
        rep = Report("br", {}, window, r.certification, r.as_dict())
    elif cmd == "depth":
        if len(args) != 1:
            raise UserError("depth expects one argument")
        rep = cmd_depth(args[0], window)
    elif cmd == "measure":
        _need(args, ["module"], cmd)
        rep = cmd_measure(args[0])
    elif cmd == "check":
        if not args or not isinstance(args[0], str):
            raise UserError("check expects a mode followed by modules")
        rep = cmd_check(args[0], args[1:], window)
        labels = labels[1:]
        args = args[1:]
    elif cmd == "crosscheck":
        if not args or not isinstance(args[0], str):
            raise UserError("crosscheck expects a lemma name followed by arguments")
        rep = cmd_crosscheck(args[0], args[1:], window, seed, options)
        labels = labels[1:]
        args = args[1:]
    elif cmd == "survey":
        if len(args) != 2 or not isinstance(args[0], str) or not isinstance(args[1], PresentedRing):
            raise UserError("survey expects a check name and a ring")
        rep = cmd_survey(args[0], args[1], window, seed, options)
        labels = labels[1:]
        args = args[1:]
    else:
        raise UserError(f"unknown command {cmd!r}")
    rep.inputs = {**{f"arg{i}": _describe(a, l) for i, (a, l) in enumerate(zip(args, labels))}, **rep.inputs}
    return rep
