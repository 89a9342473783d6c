"""Evaluation of parsed scripts into rings, modules, complexes and reports."""
from __future__ import annotations

from ..complexes.core import koszul_complex, module_as_complex, shift, tensor_complexes
from ..complexes.derived import derived_tensor
from ..grobner.poly import PolyRing
from ..rings.core import PresentedModule, PresentedRing, hom
from ..rings.duality import canonical_module, dual
from ..rings.functors import ext_module, tor_module
from ..rings.measure import cut_down_tilde, pushforward
from ..rings.resolution import min_free_resolution, syzygy, transpose
from . import registry
from ..grobner.expr import ParseError
from .dsl import (Command, ComplexDecl, ExampleRingDecl, FieldDecl, IntList, MatrixLit, ModuleDecl, Poly,
                  Polys, Ref, RingDecl, ScriptParser, SessionScript, parse_script)


class SessionError(ValueError):
    """A statement that parses but cannot be evaluated (bad degrees, failed precondition)."""


class Session:
    def __init__(self, window: int = 6, seed: int = 0, field_override=None):
        self.window = window
        self.seed = seed
        self.field_override = field_override
        self.parser = ScriptParser()
        self.env: dict = {}
        self.fields: dict = {}
        self.ring_of: dict = {}
        self.reports: list = []

    # --- driving
    def run_text(self, text: str) -> list:
        script = self.parser.parse(text)
        return self.run(script)

    def run(self, script: SessionScript) -> list:
        out = []
        for st in script.statements:
            rep = self.execute(st)
            if rep is not None:
                out.append(rep)
        self.reports.extend(out)
        return out

    def execute(self, st):
        if isinstance(st, FieldDecl):
            if st.name:
                self.fields[st.name] = st.spec
            return None
        if isinstance(st, RingDecl):
            self.env[st.name] = self._ring(st)
            return None
        if isinstance(st, ExampleRingDecl):
            ex = registry.lookup(st.example)
            stmt = ex.ring_statement(st.name, st.field or self.field_override)
            decl = parse_script(stmt + ";").statements[0]
            self.env[st.name] = self._ring(decl, name=st.example)
            return None
        if isinstance(st, ModuleDecl):
            self.env[st.name] = self._module(st)
            return None
        if isinstance(st, ComplexDecl):
            self.env[st.name] = self._complex(st)
            return None
        if isinstance(st, Command):
            from .commands import run_command
            args = [self._value(a) for a in st.args]
            options = dict(st.options)
            labels = [a.name if isinstance(a, Ref) else a for a in st.args]
            return run_command(st.name, args, options, window=options.get("window", self.window),
                               seed=options.get("seed", self.seed), labels=labels)
        raise TypeError(st)

    # --- evaluation helpers
    def _value(self, a):
        if isinstance(a, Ref):
            return self.env[a.name]
        return a

    def _ring(self, st: RingDecl, name: str | None = None) -> PresentedRing:
        spec = self.fields[st.field] if isinstance(st.field, str) else st.field
        S = PolyRing(spec.build(), [v for v, _ in st.variables], [d for _, d in st.variables])
        ideal = [S.eval_expr(e) for e in st.ideal]
        return PresentedRing(S, ideal, name=name or st.name)

    def _polys(self, R: PresentedRing, arg) -> list:
        items = arg.items if isinstance(arg, Polys) else (arg.expr,)
        return [R.S.eval_expr(e) for e in items]

    def _module(self, st: ModuleDecl) -> PresentedModule:
        op = st.op
        a = [self._value(x) for x in st.args]
        try:
            if op == "coker":
                R, mat = a
                rows = [[R.S.eval_expr(e) for e in row] for row in mat.rows]
                degs = list(mat.degrees.items) if mat.degrees is not None else None
                M = PresentedModule.cokernel(R, rows, degs)
            elif op == "free":
                M = PresentedModule.free(a[0], list(a[1].items))
            elif op == "quotient":
                M = PresentedModule.quotient(a[0], self._polys(a[0], st.args[1]))
            elif op == "residue":
                M = PresentedModule.residue_field(a[0])
            elif op == "canonical":
                M = canonical_module(a[0])
            elif op == "syzygy":
                M = syzygy(a[0], a[1])
            elif op == "tensor":
                M = a[0].tensor(a[1])
            elif op == "sum":
                M = a[0].direct_sum(a[1])
            elif op == "hom":
                M = hom(a[0], a[1])
            elif op == "transpose":
                M = transpose(a[0])
            elif op == "dual":
                M = dual(a[0])
            elif op == "cdual":
                M = dual(a[0], "canonical")
            elif op == "cutdown":
                M = cut_down_tilde(a[0], seed=self.seed)
            elif op == "minimize":
                M = a[0].minimize()
            elif op == "twist":
                M = a[0].twist(a[1])
            elif op == "pushforward":
                M = pushforward(a[0], self._polys(a[0].ring, st.args[1])[0])
            elif op == "tor":
                M = tor_module(a[0], a[1], a[2])
            elif op == "ext":
                M = ext_module(a[0], a[1], a[2])
            else:
                raise AssertionError(op)
        except SessionError:
            raise
        except ValueError as exc:
            raise SessionError(f"module {st.name}: {exc}") from exc
        M.name = st.name
        return M

    def _complex(self, st: ComplexDecl):
        op = st.op
        a = [self._value(x) for x in st.args]
        try:
            if op == "resolution":
                return min_free_resolution(a[0], a[1], decide=True).as_complex()
            if op == "koszul":
                return koszul_complex(self._polys(a[0], st.args[1]), ring=a[0])
            if op == "derived":
                return derived_tensor(a[0], a[1], a[2])
            if op == "module":
                return module_as_complex(a[0])
            if op == "tensor":
                return tensor_complexes(a[0], a[1])
            if op == "shift":
                return shift(a[0], a[1])
        except ValueError as exc:
            raise SessionError(f"complex {st.name}: {exc}") from exc
        raise AssertionError(op)

    # --- arguments given on the command line
    def load_example(self, name: str, ring_name: str = "R") -> None:
        ex = registry.lookup(name)
        stmt = ex.ring_statement(ring_name, self.field_override)
        self.run_text(f"{stmt};\nmodule k = residue {ring_name};\n")
        self.env[ring_name].name = name

    def object_arg(self, text: str, index: int, kinds=("module",)):
        """Resolve a CLI argument: a declared name or a constructor expression."""
        text = text.strip()
        if text in self.env:
            obj = self.env[text]
            if isinstance(obj, PresentedRing):
                return PresentedModule.free(obj, [0])
            return obj
        first = None
        for kind in kinds:
            label = f"arg{index}"
            try:
                self.run_text(f"{kind} {label} = {text};")
                return self.env[label]
            except ParseError as exc:
                first = first or exc
        raise first
