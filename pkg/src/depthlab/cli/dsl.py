"""The session language: parser, AST and printer.

A script is a sequence of statements terminated by ';':

    field Q;
    ring R = Q[x,y]/(x*y);
    ring A = example i_alpha;
    module M = coker R [[x, y]] degrees [0];
    module k = residue R;
    complex F = resolution M 4;
    depth M;
    qr M k window=8;

Identifiers must be declared before use and every polynomial literal must be
homogeneous for the variable degrees of its ring.  Errors are ParseError
instances carrying the line and column of the offending token.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from ..exactmath import DEFAULT_PRIME, QQ, PrimeField, RationalFunctionField
from ..grobner.expr import Expr, ParseError, Token, TokenStream, format_expr, parse_expr, tokenize
from ..grobner.poly import PolyRing

FIELD_KINDS = ("Q", "Qt", "Fp", "Fpt")

# argument kinds: ring, module, complex, int, intlist, poly, polys, matrix
MODULE_OPS = {
    "coker": ("ring", "matrix"),
    "free": ("ring", "intlist"),
    "quotient": ("ring", "polys"),
    "residue": ("ring",),
    "canonical": ("ring",),
    "syzygy": ("module", "int"),
    "tensor": ("module", "module"),
    "sum": ("module", "module"),
    "hom": ("module", "module"),
    "transpose": ("module",),
    "dual": ("module",),
    "cdual": ("module",),
    "cutdown": ("module",),
    "minimize": ("module",),
    "twist": ("module", "int"),
    "pushforward": ("module", "poly"),
    "tor": ("module", "module", "int"),
    "ext": ("module", "module", "int"),
}

COMPLEX_OPS = {
    "resolution": ("module", "int"),
    "koszul": ("ring", "polys"),
    "derived": ("module", "module", "int"),
    "module": ("module",),
    "tensor": ("complex", "complex"),
    "shift": ("complex", "int"),
}

COMMANDS = ("resolve", "tor", "ext", "depth", "measure", "qr", "br", "check", "crosscheck", "survey")
KEYWORD_FIRST = ("check", "crosscheck", "survey")


# --- AST

@dataclass(frozen=True)
class FieldSpec:
    kind: str
    p: int | None = None
    param: str | None = None

    def __str__(self):
        s = self.kind
        if self.p is not None:
            s += f":{self.p}"
        if self.param is not None and self.param != "t":
            s += f"({self.param})"
        return s

    def build(self):
        if self.kind == "Q":
            return QQ
        if self.kind == "Fp":
            return PrimeField(self.p or DEFAULT_PRIME)
        base = QQ if self.kind == "Qt" else PrimeField(self.p or DEFAULT_PRIME)
        return RationalFunctionField(base, self.param or "t")

    @classmethod
    def parse(cls, text: str) -> "FieldSpec":
        ts = TokenStream(tokenize(text))
        spec = _field_spec(ts)
        t = ts.peek()
        if t.kind != "EOF":
            raise ParseError(f"unexpected {t.text!r} after field", t.line, t.col)
        return spec


@dataclass(frozen=True)
class FieldDecl:
    spec: FieldSpec
    name: str | None = None


@dataclass(frozen=True)
class RingDecl:
    name: str
    field: Union[FieldSpec, str]
    variables: tuple  # ((name, degree), ...)
    ideal: tuple  # Expr, ...


@dataclass(frozen=True)
class ExampleRingDecl:
    name: str
    example: str
    field: FieldSpec | None = None


@dataclass(frozen=True)
class Ref:
    name: str


@dataclass(frozen=True)
class Poly:
    expr: Expr


@dataclass(frozen=True)
class Polys:
    items: tuple


@dataclass(frozen=True)
class IntList:
    items: tuple


@dataclass(frozen=True)
class MatrixLit:
    rows: tuple  # tuple of tuples of Expr
    degrees: IntList | None = None


@dataclass(frozen=True)
class ModuleDecl:
    name: str
    op: str
    args: tuple


@dataclass(frozen=True)
class ComplexDecl:
    name: str
    op: str
    args: tuple


@dataclass(frozen=True)
class Command:
    name: str
    args: tuple  # Ref, int or str (keywords)
    options: tuple  # ((key, value), ...)


Statement = Union[FieldDecl, RingDecl, ExampleRingDecl, ModuleDecl, ComplexDecl, Command]


@dataclass(frozen=True)
class SessionScript:
    statements: tuple

    def __len__(self):
        return len(self.statements)


# --- parser

def _field_spec(ts: TokenStream) -> FieldSpec:
    t = ts.expect_kind("IDENT", "a field (Q, Qt, Fp:P, Fpt:P)")
    if t.text not in FIELD_KINDS:
        raise ParseError(f"unknown field {t.text!r}", t.line, t.col)
    p = None
    if ts.at(":"):
        ts.next()
        pt = ts.expect_kind("INT", "a prime")
        p = int(pt.text)
        if t.text in ("Q", "Qt"):
            raise ParseError("characteristic given for a rational field", pt.line, pt.col)
        if p < 2 or any(p % d == 0 for d in range(2, int(p ** 0.5) + 1)):
            raise ParseError(f"{p} is not prime", pt.line, pt.col)
    param = None
    if t.text in ("Qt", "Fpt") and ts.at("(") and ts.peek(1).kind == "IDENT" and ts.peek(2).text == ")":
        ts.next()
        param = ts.next().text
        ts.next()
        if param == "t":
            param = None
    if t.text in ("Fp", "Fpt") and p is None:
        p = DEFAULT_PRIME
    return FieldSpec(t.text, p, param)


class ScriptParser:
    def __init__(self, registry=None):
        self.ts = TokenStream(tokenize(""))
        self.names: dict[str, str] = {}  # name -> kind
        self.ring_of: dict[str, str] = {}  # module/complex/ring name -> ring name
        self.scratch: dict[str, PolyRing] = {}
        self.fields: dict[str, FieldSpec] = {}
        self.default_field: FieldSpec | None = None
        if registry is None:
            from . import registry as registry_mod
            registry = registry_mod
        self.registry = registry

    def error(self, msg: str, tok: Token | None = None):
        tok = tok or self.ts.peek()
        raise ParseError(msg, tok.line, tok.col)

    def ident(self, what: str = "an identifier") -> Token:
        return self.ts.expect_kind("IDENT", what)

    def declare(self, tok: Token, kind: str):
        if tok.text in FIELD_KINDS or tok.text in COMMANDS or tok.text in ("field", "ring", "module", "complex"):
            self.error(f"{tok.text!r} is a reserved word", tok)
        self.names[tok.text] = kind

    def lookup(self, tok: Token, kinds) -> str:
        kind = self.names.get(tok.text)
        if kind is None:
            self.error(f"undeclared identifier {tok.text!r}", tok)
        if kind not in kinds:
            self.error(f"{tok.text!r} is a {kind}, expected {' or '.join(kinds)}", tok)
        return kind

    # --- statements
    def parse(self, text: str) -> SessionScript:
        """Parse more statements; declarations from earlier calls stay visible."""
        self.ts = TokenStream(tokenize(text))
        return self.script()

    def script(self) -> SessionScript:
        out = []
        while self.ts.peek().kind != "EOF":
            out.append(self.statement())
            self.ts.expect(";")
        return SessionScript(tuple(out))

    def statement(self) -> Statement:
        t = self.ts.peek()
        if t.kind != "IDENT":
            self.error("expected a statement")
        if t.text == "field":
            return self.field_decl()
        if t.text == "ring":
            return self.ring_decl()
        if t.text == "module":
            return self.object_decl("module", MODULE_OPS, ModuleDecl)
        if t.text == "complex":
            return self.object_decl("complex", COMPLEX_OPS, ComplexDecl)
        if t.text in COMMANDS:
            return self.command()
        self.error(f"unknown statement {t.text!r}")

    def field_decl(self) -> FieldDecl:
        self.ts.next()
        name = None
        if self.ts.peek().kind == "IDENT" and self.ts.peek(1).text == "=":
            nt = self.ident()
            self.declare(nt, "field")
            name = nt.text
            self.ts.next()
        spec = _field_spec(self.ts)
        if name:
            self.fields[name] = spec
        else:
            self.default_field = spec
        return FieldDecl(spec, name)

    def ring_decl(self):
        self.ts.next()
        nt = self.ident("a ring name")
        self.ts.expect("=")
        if self.ts.at("example"):
            self.ts.next()
            et = self.ident("an example name")
            field = None
            if self.ts.at("over"):
                self.ts.next()
                field = _field_spec(self.ts)
            try:
                names, degrees, fspec = self.registry.signature(et.text, field)
            except KeyError:
                self.error(f"unknown example ring {et.text!r}", et)
            self.declare(nt, "ring")
            self.scratch[nt.text] = PolyRing(fspec.build(), names, degrees)
            return ExampleRingDecl(nt.text, et.text, field)
        ft = self.ts.peek()
        if ft.kind == "IDENT" and ft.text in self.fields:
            self.ts.next()
            field, fspec = ft.text, self.fields[ft.text]
        else:
            fspec = _field_spec(self.ts)
            field = fspec
        self.ts.expect("[")
        variables = []
        while True:
            vt = self.ident("a variable name")
            deg = 1
            if self.ts.at(":"):
                self.ts.next()
                dt = self.ts.expect_kind("INT", "a variable degree")
                deg = int(dt.text)
                if deg <= 0:
                    self.error("variable degrees must be positive", dt)
            if any(v == vt.text for v, _ in variables):
                self.error(f"duplicate variable {vt.text!r}", vt)
            variables.append((vt.text, deg))
            if self.ts.at(","):
                self.ts.next()
                continue
            self.ts.expect("]")
            break
        try:
            S = PolyRing(fspec.build(), [v for v, _ in variables], [d for _, d in variables])
        except ValueError as exc:
            self.error(str(exc), nt)
        self.declare(nt, "ring")
        self.scratch[nt.text] = S
        ideal = ()
        if self.ts.at("/"):
            self.ts.next()
            ideal = self.polys(nt.text).items
        return RingDecl(nt.text, field, tuple(variables), ideal)

    def object_decl(self, kind: str, ops: dict, cls):
        self.ts.next()
        nt = self.ident(f"a {kind} name")
        self.ts.expect("=")
        ot = self.ident(f"a {kind} constructor")
        if ot.text not in ops:
            self.error(f"unknown {kind} constructor {ot.text!r}", ot)
        args = []
        ring = None
        for akind in ops[ot.text]:
            arg, ring = self.argument(akind, ring)
            args.append(arg)
        self.declare(nt, kind)
        self.ring_of[nt.text] = ring
        return cls(nt.text, ot.text, tuple(args))

    def argument(self, kind: str, ring: str | None):
        if kind in ("ring", "module", "complex"):
            t = self.ident(f"a {kind}")
            self.lookup(t, (kind,))
            r = t.text if kind == "ring" else self.ring_of[t.text]
            if ring is not None and r != ring:
                self.error(f"{t.text!r} lives over {r!r}, expected {ring!r}", t)
            return Ref(t.text), r
        if kind == "int":
            return self.integer(), ring
        if kind == "intlist":
            if self.ts.peek().kind == "INT":
                n = int(self.ts.next().text)
                return IntList((0,) * n), ring
            return self.intlist(), ring
        if kind == "poly":
            return Poly(self.poly(ring)), ring
        if kind == "polys":
            return self.polys(ring), ring
        if kind == "matrix":
            return self.matrix(ring), ring
        raise AssertionError(kind)

    def integer(self) -> int:
        sign = 1
        if self.ts.at("-"):
            self.ts.next()
            sign = -1
        return sign * int(self.ts.expect_kind("INT", "an integer").text)

    def intlist(self) -> IntList:
        self.ts.expect("[")
        items = []
        if not self.ts.at("]"):
            items.append(self.integer())
            while self.ts.at(","):
                self.ts.next()
                items.append(self.integer())
        self.ts.expect("]")
        return IntList(tuple(items))

    def poly(self, ring: str) -> Expr:
        start = self.ts.peek()
        e = parse_expr(self.ts)
        S = self.scratch[ring]
        try:
            p = S.eval_expr(e)
        except KeyError as exc:
            self.error(f"unknown variable {exc.args[0]!r} in ring {ring!r}", start)
        except (ZeroDivisionError, ValueError, TypeError) as exc:
            self.error(f"invalid polynomial: {exc}", start)
        if not p.is_homogeneous():
            self.error("inhomogeneous polynomial", start)
        return e

    def polys(self, ring: str) -> Polys:
        self.ts.expect("(")
        items = [self.poly(ring)]
        while self.ts.at(","):
            self.ts.next()
            items.append(self.poly(ring))
        self.ts.expect(")")
        return Polys(tuple(items))

    def matrix(self, ring: str) -> MatrixLit:
        self.ts.expect("[")
        rows = []
        while True:
            self.ts.expect("[")
            row = [self.poly(ring)]
            while self.ts.at(","):
                self.ts.next()
                row.append(self.poly(ring))
            self.ts.expect("]")
            if rows and len(row) != len(rows[0]):
                self.error("matrix rows have different lengths")
            rows.append(tuple(row))
            if self.ts.at(","):
                self.ts.next()
                continue
            self.ts.expect("]")
            break
        degrees = None
        if self.ts.at("degrees"):
            self.ts.next()
            degrees = self.intlist()
            if len(degrees.items) != len(rows):
                self.error("one degree per matrix row is required")
        return MatrixLit(tuple(rows), degrees)

    def command(self) -> Command:
        ct = self.ts.next()
        args = []
        options = []
        first = True
        while not self.ts.at(";") and self.ts.peek().kind != "EOF":
            t = self.ts.peek()
            if t.kind == "IDENT" and self.ts.peek(1).text == "=":
                self.ts.next()
                self.ts.next()
                v = self.ts.peek()
                if v.kind == "INT" or v.text == "-":
                    options.append((t.text, self.integer()))
                else:
                    options.append((t.text, self.ident("an option value").text))
            elif t.kind == "IDENT":
                self.ts.next()
                if first and ct.text in KEYWORD_FIRST:
                    args.append(t.text)
                else:
                    self.lookup(t, ("ring", "module", "complex"))
                    args.append(Ref(t.text))
            elif t.kind == "INT" or t.text == "-":
                args.append(self.integer())
            else:
                self.error(f"unexpected {t.text!r} in command")
            first = False
        return Command(ct.text, tuple(args), tuple(options))


def parse_script(text: str, registry=None) -> SessionScript:
    return ScriptParser(registry).parse(text)


# --- printer

def _fmt_polys(items) -> str:
    return "(" + ", ".join(format_expr(e) for e in items) + ")"


def _fmt_arg(a) -> str:
    if isinstance(a, Ref):
        return a.name
    if isinstance(a, int):
        return str(a)
    if isinstance(a, str):
        return a
    if isinstance(a, Poly):
        return format_expr(a.expr)
    if isinstance(a, Polys):
        return _fmt_polys(a.items)
    if isinstance(a, IntList):
        return "[" + ", ".join(str(i) for i in a.items) + "]"
    if isinstance(a, MatrixLit):
        s = "[" + ", ".join("[" + ", ".join(format_expr(e) for e in row) + "]" for row in a.rows) + "]"
        if a.degrees is not None:
            s += " degrees " + _fmt_arg(a.degrees)
        return s
    raise TypeError(a)


def format_statement(st: Statement) -> str:
    if isinstance(st, FieldDecl):
        return f"field {st.name} = {st.spec}" if st.name else f"field {st.spec}"
    if isinstance(st, RingDecl):
        vs = ", ".join(v if d == 1 else f"{v}:{d}" for v, d in st.variables)
        s = f"ring {st.name} = {st.field}[{vs}]"
        if st.ideal:
            s += "/" + _fmt_polys(st.ideal)
        return s
    if isinstance(st, ExampleRingDecl):
        s = f"ring {st.name} = example {st.example}"
        return s + (f" over {st.field}" if st.field else "")
    if isinstance(st, (ModuleDecl, ComplexDecl)):
        kw = "module" if isinstance(st, ModuleDecl) else "complex"
        return " ".join([f"{kw} {st.name} = {st.op}"] + [_fmt_arg(a) for a in st.args])
    if isinstance(st, Command):
        parts = [st.name] + [_fmt_arg(a) for a in st.args] + [f"{k}={v}" for k, v in st.options]
        return " ".join(parts)
    raise TypeError(st)


def format_script(script: SessionScript) -> str:
    return "".join(format_statement(st) + ";\n" for st in script.statements)
