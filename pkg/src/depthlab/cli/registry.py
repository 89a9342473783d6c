"""Built-in example rings, each stored as a session script."""
from __future__ import annotations

import re
from dataclasses import dataclass

from ..exactmath import DEFAULT_PRIME
from .dsl import FieldSpec

PARAM = "a"  # name of the transcendental parameter alpha in the coefficient field


@dataclass(frozen=True)
class Example:
    name: str
    provenance: str
    variables: tuple
    ideal: tuple
    uses_param: bool = False
    default_field: str = "Q"

    def field(self, override: FieldSpec | None = None) -> FieldSpec:
        spec = override or FieldSpec.parse(self.default_field)
        if self.uses_param and spec.kind in ("Q", "Fp"):
            spec = FieldSpec("Qt" if spec.kind == "Q" else "Fpt", spec.p, PARAM)
        if self.uses_param and spec.param is None:
            spec = FieldSpec(spec.kind, spec.p, PARAM)
        return spec

    def ring_statement(self, ring_name: str | None = None, field: FieldSpec | None = None) -> str:
        spec = self.field(field)
        vs = ", ".join(v if d == 1 else f"{v}:{d}" for v, d in self.variables)
        ring = f"ring {ring_name or self.name} = {spec}[{vs}]"
        if self.ideal:
            ring += "/(" + ", ".join(self.ideal) + ")"
        return ring

    def script(self, ring_name: str | None = None, field: FieldSpec | None = None) -> str:
        """A DSL script defining the ring and its residue field k."""
        R = ring_name or self.name
        return f"{self.ring_statement(R, field)};\nmodule k = residue {R};\n"


_JS06 = ("v^2", "z^2", "x*y", "v*x+a*x*z", "v*y+y*z", "v*x+y^2", "v*y-x^2")

EXAMPLES = {
    "i_alpha": Example(
        "i_alpha",
        "Artinian quadratic algebra in 5 variables with alpha = a transcendental; "
        "used for failure of the uniform Auslander condition",
        tuple((f"x{i}", 1) for i in range(1, 6)),
        ("a*x1*x3+x2*x3", "x1*x4+x2*x4", "x3^2+a*x1*x5-x2*x5", "x4^2+x1*x5-x2*x5",
         "x1^2", "x2^2", "x3*x4", "x3*x5", "x4*x5", "x5^2"),
        uses_param=True, default_field=f"Fpt:{DEFAULT_PRIME}"),
    "js06": Example(
        "js06",
        "Artinian ring in v,x,y,z with alpha = a transcendental; it has a module with "
        "Ext^{>0}(M,R) = 0 that is not totally reflexive",
        (("v", 1), ("x", 1), ("y", 1), ("z", 1)),
        _JS06, uses_param=True, default_field=f"Fpt:{DEFAULT_PRIME}"),
    "fiber_q": Example(
        "fiber_q",
        "graded model of the fiber product of the js06 ring extended by t with k[s], "
        "adjoined variable w; a CM ring of dimension 2",
        tuple((v, 1) for v in ("t", "v", "x", "y", "z", "s", "w")),
        _JS06 + ("t*s", "v*s", "x*s", "y*s", "z*s"),
        uses_param=True, default_field=f"Fpt:{DEFAULT_PRIME}"),
    "hypersurface_xy": Example(
        "hypersurface_xy", "the node k[x,y]/(xy)", (("x", 1), ("y", 1)), ("x*y",)),
    "dual_numbers": Example(
        "dual_numbers", "k[x]/(x^2)", (("x", 1),), ("x^2",)),
    "semigroup_345": Example(
        "semigroup_345", "the numerical semigroup ring k[t^3, t^4, t^5]",
        (("x", 3), ("y", 4), ("z", 5)), ("y^2-x*z", "z^2-x^2*y", "y*z-x^3")),
}

_REGULAR = re.compile(r"regular_(\d+)$")


def lookup(name: str) -> Example:
    if name in EXAMPLES:
        return EXAMPLES[name]
    m = _REGULAR.match(name)
    if name == "regular_n" or m:
        n = int(m.group(1)) if m else 3
        if n < 1:
            raise KeyError(name)
        return Example(name, f"polynomial ring in {n} variables",
                       tuple((f"x{i}", 1) for i in range(1, n + 1)), ())
    raise KeyError(name)


def names() -> list[str]:
    return sorted(EXAMPLES) + ["regular_n"]


def signature(name: str, field: FieldSpec | None = None):
    """Variable names, degrees and field of an example, without building it."""
    ex = lookup(name)
    return [v for v, _ in ex.variables], [d for _, d in ex.variables], ex.field(field)


def example_registry(name: str, field: FieldSpec | str | None = None) -> dict:
    """Construct the example ring; returns {"ring", "k", "provenance", "script"}."""
    from .session import Session
    if isinstance(field, str):
        field = FieldSpec.parse(field)
    ex = lookup(name)
    text = ex.script("R", field)
    sess = Session()
    sess.run_text(text)
    return {"ring": sess.env["R"], "k": sess.env["k"], "provenance": ex.provenance, "script": text}
