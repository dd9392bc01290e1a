"""A small line-oriented language for finite categories, functors and transformations.

Grammar (EBNF; one statement per line, ``#`` starts a comment)::

    file      = { directive | category | functor | nat } ;
    directive = ( "window" | "grades" | "limit" ) INT ;
    category  = "category" NAME "{" { cat_stmt } "}" ;
    cat_stmt  = "enrichment" ( "set" | "vect" )
              | "objects" NAME { NAME }
              | "arrow" NAME ":" NAME "->" NAME
              | "identity" NAME "=" value
              | "compose" NAME NAME "=" value ;
    functor   = "functor" NAME ":" NAME "->" NAME "{" { fun_stmt } "}" ;
    fun_stmt  = "object" NAME "->" NAME | "arrow" NAME "->" value ;
    nat       = "nat" NAME ":" NAME "->" NAME "{" { "component" NAME "=" value } "}" ;
    value     = NAME | "[" [ NUM { "," NUM } ] "]" ;

``compose g f = h`` means g o f = h. In a set-enriched category the identity
of x is ``id_x`` unless declared, composites with identities are implicit, and
missing composites are inferred by associativity. In a vect-enriched category
arrows are basis vectors, and values are coordinate vectors over the basis of
the relevant hom in declaration order. In a nat block the functor name ``id``
is the identity functor.

Diagnostics: E001 syntax, E002 undefined reference, E003 composition conflict,
E004 incomplete data, E005 axiom violation.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Union

DIRECTIVES = ("window", "grades", "limit")
_TOKEN = re.compile(r"\[|\]|\{|\}|,|[^\s\[\]{},]+")


@dataclass(frozen=True)
class Span:
    line: int
    col: int

    def __str__(self):
        return f"{self.line}:{self.col}"


@dataclass
class Diagnostic:
    code: str
    message: str
    span: Optional[Span] = None

    def __str__(self):
        where = f"{self.span}: " if self.span else ""
        return f"{where}{self.code} {self.message}"

    def as_dict(self) -> dict:
        d = {"code": self.code, "message": self.message}
        if self.span:
            d["line"], d["col"] = self.span.line, self.span.col
        return d


class SpecError(ValueError):
    def __init__(self, diagnostics: list[Diagnostic]):
        self.diagnostics = diagnostics
        super().__init__("; ".join(map(str, diagnostics)))


Value = Union[str, tuple]       # a label, or a tuple of Fractions


@dataclass
class Arrow:
    name: str
    src: str
    dst: str
    span: Span


@dataclass
class Entry:
    """``key = value`` lines: identities, composites, assignments, components."""

    key: tuple
    value: Value
    span: Span


@dataclass
class CategoryBlock:
    name: str
    span: Span
    enrichment: str = "set"
    objects: list = field(default_factory=list)
    object_spans: dict = field(default_factory=dict)
    arrows: list = field(default_factory=list)
    identities: list = field(default_factory=list)
    compose: list = field(default_factory=list)
    explicit_enrichment: bool = False


@dataclass
class FunctorBlock:
    name: str
    src: str
    dst: str
    span: Span
    objects: list = field(default_factory=list)
    arrows: list = field(default_factory=list)


@dataclass
class NatBlock:
    name: str
    source: str
    target: str
    span: Span
    components: list = field(default_factory=list)


@dataclass
class SpecFile:
    directives: list = field(default_factory=list)     # (name, int, span)
    blocks: list = field(default_factory=list)

    def directive(self, name: str, default=None):
        for n, v, _ in self.directives:
            if n == name:
                return v
        return default

    def categories(self) -> list[CategoryBlock]:
        return [b for b in self.blocks if isinstance(b, CategoryBlock)]

    def functors(self) -> list[FunctorBlock]:
        return [b for b in self.blocks if isinstance(b, FunctorBlock)]

    def nats(self) -> list[NatBlock]:
        return [b for b in self.blocks if isinstance(b, NatBlock)]


# -- parsing ---------------------------------------------------------------------

def _tokens(line: str, lineno: int) -> list[tuple[str, Span]]:
    text = line.split("#", 1)[0]
    return [(m.group(), Span(lineno, m.start() + 1)) for m in _TOKEN.finditer(text)]


class _Parser:
    def __init__(self, text: str):
        self.lines = [(i + 1, _tokens(l, i + 1)) for i, l in enumerate(text.splitlines())]
        self.lines = [(n, t) for n, t in self.lines if t]
        self.pos = 0

    def fail(self, message: str, span: Span):
        raise SpecError([Diagnostic("E001", message, span)])

    def value(self, toks: list, i: int, span: Span) -> tuple[Value, int]:
        """Parse a value starting at toks[i]; returns (value, index after it)."""
        if i >= len(toks):
            self.fail("expected a value", span)
        t, s = toks[i]
        if t != "[":
            if t in ("]", ",", "{", "}"):
                self.fail(f"unexpected {t!r}", s)
            return t, i + 1
        out, i = [], i + 1
        expect_num = True
        while i < len(toks) and toks[i][0] != "]":
            tok, ts = toks[i]
            if expect_num:
                try:
                    out.append(Fraction(tok))
                except (ValueError, ZeroDivisionError):
                    self.fail(f"{tok!r} is not a rational number", ts)
            elif tok != ",":
                self.fail(f"expected ',' but found {tok!r}", ts)
            expect_num = not expect_num
            i += 1
        if i >= len(toks):
            self.fail("unterminated vector", s)
        if out and expect_num:
            self.fail("trailing ',' in vector", toks[i][1])
        return tuple(out), i + 1

    def expect(self, toks: list, shape: list[Optional[str]], what: str) -> list[str]:
        """Match ``shape`` (None = any name) exactly."""
        if len(toks) != len(shape):
            span = toks[min(len(toks), len(shape)) - 1][1] if toks else None
            self.fail(f"malformed {what}: expected {len(shape)} tokens, found {len(toks)}", span)
        names = []
        for (t, s), want in zip(toks, shape):
            if want is None:
                if t in ("{", "}", "[", "]", ",", ":", "=", "->"):
                    self.fail(f"expected a name in {what}, found {t!r}", s)
                names.append(t)
            elif t != want:
                self.fail(f"expected {want!r} in {what}, found {t!r}", s)
        return names

    def parse(self) -> SpecFile:
        spec = SpecFile()
        while self.pos < len(self.lines):
            _, toks = self.lines[self.pos]
            head, span = toks[0]
            self.pos += 1
            if head in DIRECTIVES:
                (v,) = self.expect(toks, [head, None], head)
                try:
                    n = int(v)
                except ValueError:
                    self.fail(f"{head} needs an integer, found {v!r}", toks[1][1])
                if n < 0:
                    self.fail(f"{head} must be non-negative", toks[1][1])
                spec.directives.append((head, n, span))
            elif head == "category":
                (name,) = self.expect(toks, ["category", None, "{"], "category header")
                spec.blocks.append(self.category(name, span))
            elif head == "functor":
                name, a, b = self.expect(toks, ["functor", None, ":", None, "->", None, "{"], "functor header")
                spec.blocks.append(self.functor(name, a, b, span))
            elif head == "nat":
                name, a, b = self.expect(toks, ["nat", None, ":", None, "->", None, "{"], "nat header")
                spec.blocks.append(self.nat(name, a, b, span))
            else:
                self.fail(f"unknown statement {head!r}", span)
        return spec

    def body(self, span: Span):
        """Yield the statement token lists up to the closing brace."""
        while self.pos < len(self.lines):
            _, toks = self.lines[self.pos]
            self.pos += 1
            if toks[0][0] == "}":
                if len(toks) > 1:
                    self.fail("unexpected tokens after '}'", toks[1][1])
                return
            yield toks
        self.fail("block is not closed", span)

    def category(self, name: str, span: Span) -> CategoryBlock:
        c = CategoryBlock(name, span)
        for toks in self.body(span):
            head, s = toks[0]
            if head == "enrichment":
                (e,) = self.expect(toks, ["enrichment", None], "enrichment")
                if e not in ("set", "vect"):
                    self.fail(f"enrichment must be set or vect, not {e!r}", toks[1][1])
                c.enrichment, c.explicit_enrichment = e, True
            elif head == "objects":
                if len(toks) < 2:
                    self.fail("objects needs at least one name", s)
                names = self.expect(toks, ["objects"] + [None] * (len(toks) - 1), "objects")
                for n, (_, ns) in zip(names, toks[1:]):
                    c.objects.append(n)
                    c.object_spans.setdefault(n, ns)
            elif head == "arrow":
                a, x, y = self.expect(toks, ["arrow", None, ":", None, "->", None], "arrow")
                c.arrows.append(Arrow(a, x, y, s))
            elif head == "identity":
                self.expect(toks[:3], ["identity", None, "="], "identity")
                v, end = self.value(toks, 3, s)
                self._end(toks, end)
                c.identities.append(Entry((toks[1][0],), v, s))
            elif head == "compose":
                self.expect(toks[:4], ["compose", None, None, "="], "compose")
                v, end = self.value(toks, 4, s)
                self._end(toks, end)
                c.compose.append(Entry((toks[1][0], toks[2][0]), v, s))
            else:
                self.fail(f"unknown category statement {head!r}", s)
        return c

    def functor(self, name, a, b, span) -> FunctorBlock:
        f = FunctorBlock(name, a, b, span)
        for toks in self.body(span):
            head, s = toks[0]
            if head == "object":
                x, y = self.expect(toks, ["object", None, "->", None], "object assignment")
                f.objects.append(Entry((x,), y, s))
            elif head == "arrow":
                self.expect(toks[:3], ["arrow", None, "->"], "arrow assignment")
                v, end = self.value(toks, 3, s)
                self._end(toks, end)
                f.arrows.append(Entry((toks[1][0],), v, s))
            else:
                self.fail(f"unknown functor statement {head!r}", s)
        return f

    def nat(self, name, a, b, span) -> NatBlock:
        t = NatBlock(name, a, b, span)
        for toks in self.body(span):
            head, s = toks[0]
            if head != "component":
                self.fail(f"unknown nat statement {head!r}", s)
            self.expect(toks[:3], ["component", None, "="], "component")
            v, end = self.value(toks, 3, s)
            self._end(toks, end)
            t.components.append(Entry((toks[1][0],), v, s))
        return t

    def _end(self, toks, end):
        if end != len(toks):
            self.fail(f"unexpected {toks[end][0]!r}", toks[end][1])


def parse(text: str) -> SpecFile:
    """Syntax only; see :func:`build` for name resolution and validation."""
    return _Parser(text).parse()


# -- printing --------------------------------------------------------------------

def format_value(v: Value) -> str:
    if isinstance(v, tuple):
        return "[" + ", ".join(str(x) for x in v) + "]"
    return v


def print_spec(spec: SpecFile) -> str:
    """Normalised text: two-space indentation, single spaces, one blank line between blocks."""
    parts = []
    if spec.directives:
        parts.append("\n".join(f"{n} {v}" for n, v, _ in spec.directives))
    for b in spec.blocks:
        lines = []
        if isinstance(b, CategoryBlock):
            lines.append(f"category {b.name} {{")
            if b.explicit_enrichment:
                lines.append(f"  enrichment {b.enrichment}")
            if b.objects:
                lines.append("  objects " + " ".join(b.objects))
            lines += [f"  arrow {a.name} : {a.src} -> {a.dst}" for a in b.arrows]
            lines += [f"  identity {e.key[0]} = {format_value(e.value)}" for e in b.identities]
            lines += [f"  compose {e.key[0]} {e.key[1]} = {format_value(e.value)}" for e in b.compose]
        elif isinstance(b, FunctorBlock):
            lines.append(f"functor {b.name} : {b.src} -> {b.dst} {{")
            lines += [f"  object {e.key[0]} -> {e.value}" for e in b.objects]
            lines += [f"  arrow {e.key[0]} -> {format_value(e.value)}" for e in b.arrows]
        else:
            lines.append(f"nat {b.name} : {b.source} -> {b.target} {{")
            lines += [f"  component {e.key[0]} = {format_value(e.value)}" for e in b.components]
        lines.append("}")
        parts.append("\n".join(lines))
    return "\n\n".join(parts) + "\n"


# -- building engine objects ---------------------------------------------------------

@dataclass
class Model:
    """Validated categories, functors and transformations of a spec file."""

    spec: SpecFile
    categories: dict
    functors: dict
    nats: dict

    def directive(self, name: str, default=None):
        return self.spec.directive(name, default)


class _Builder:
    def __init__(self, spec: SpecFile):
        self.spec = spec
        self.diags: list[Diagnostic] = []

    def err(self, code: str, message: str, span: Optional[Span]):
        self.diags.append(Diagnostic(code, message, span))

    def build(self) -> Model:
        from .core import identity_functor
        cats, funs, nats = {}, {}, {}
        names, failed = {}, set()
        for b in self.spec.blocks:
            if b.name in names:
                self.err("E003", f"{b.name!r} is defined twice (first at line {names[b.name].line})", b.span)
                continue
            names[b.name] = b.span
            if isinstance(b, CategoryBlock):
                c = self.category(b)
                if c is not None:
                    cats[b.name] = c
                else:
                    failed.add(b.name)
            elif isinstance(b, FunctorBlock):
                if failed & {b.src, b.dst}:
                    failed.add(b.name)
                    continue
                F = self.functor(b, cats)
                if F is not None:
                    funs[b.name] = F
                else:
                    failed.add(b.name)
            else:
                if failed & {b.source, b.target}:
                    continue
                t = self.nat(b, funs, identity_functor)
                if t is not None:
                    nats[b.name] = t
        if self.diags:
            raise SpecError(self.diags)
        return Model(self.spec, cats, funs, nats)

    # categories
    def category(self, b: CategoryBlock):
        from .core import FiniteCategory, validate
        before = len(self.diags)
        objects = []
        for x in b.objects:
            if x in objects:
                self.err("E003", f"object {x!r} declared twice", b.object_spans.get(x, b.span))
            else:
                objects.append(x)
        arrows, homs = {}, {(x, y): [] for x in objects for y in objects}
        for a in b.arrows:
            for end in (a.src, a.dst):
                if end not in objects:
                    self.err("E002", f"arrow {a.name!r} refers to undeclared object {end!r}", a.span)
            if a.name in arrows or a.name in objects:
                self.err("E003", f"name {a.name!r} declared twice", a.span)
                continue
            if a.src in objects and a.dst in objects:
                arrows[a.name] = a
                homs[(a.src, a.dst)].append(a.name)
        if len(self.diags) > before:
            return None
        if b.enrichment == "set":
            ids, table = self._set_table(b, objects, arrows, homs)
        else:
            ids, table = self._vect_table(b, objects, arrows, homs)
        if len(self.diags) > before:
            return None
        cat = FiniteCategory(objects, homs, table, ids, b.enrichment, b.name)
        for v in validate(cat).violations:
            self.err("E005", f"category {b.name}: {v.message}", b.span)
        return cat if len(self.diags) == before else None

    def _set_table(self, b, objects, arrows, homs):
        ids = {}
        for e in b.identities:
            x, v = e.key[0], e.value
            if x not in objects:
                self.err("E002", f"identity for undeclared object {x!r}", e.span)
            elif not isinstance(v, str) or v not in arrows:
                self.err("E002", f"identity of {x!r} is not a declared arrow: {format_value(v)}", e.span)
            elif (arrows[v].src, arrows[v].dst) != (x, x):
                self.err("E005", f"identity of {x!r} must be an arrow {x} -> {x}", e.span)
            elif x in ids and ids[x] != v:
                self.err("E003", f"two identities declared for {x!r}", e.span)
            else:
                ids[x] = v
        src = {a: arrows[a].src for a in arrows}
        dst = {a: arrows[a].dst for a in arrows}
        for x in objects:
            if x not in ids:
                name = f"id_{x}"
                if name in arrows:
                    if (src[name], dst[name]) != (x, x):
                        self.err("E005", f"arrow {name!r} must be an endomorphism of {x!r}", arrows[name].span)
                        continue
                else:
                    homs[(x, x)].insert(0, name)
                    src[name] = dst[name] = x
                ids[x] = name
        before = len(self.diags)
        table, origin = {}, {}
        for e in b.compose:
            g, f = e.key
            h = e.value
            bad = [n for n in (g, f) if n not in src]
            if isinstance(h, tuple) or h not in src:
                bad.append(format_value(h))
            if bad:
                self.err("E002", f"undeclared arrow {bad[0]!r} in composite", e.span)
                continue
            if dst[f] != src[g]:
                self.err("E005", f"{g} o {f} is not composable: {dst[f]} != {src[g]}", e.span)
                continue
            if (src[h], dst[h]) != (src[f], dst[g]):
                self.err("E005", f"{g} o {f} = {h} has the wrong type", e.span)
                continue
            if (g, f) in table and table[(g, f)] != h:
                self.err("E003", f"{g} o {f} given as both {table[(g, f)]} and {h}", e.span)
                continue
            table[(g, f)] = h
            origin[(g, f)] = e.span
        if len(self.diags) > before:
            return ids, table
        labels = list(src)
        for f in labels:
            i_d, i_s = ids[dst[f]], ids[src[f]]
            for key in ((i_d, f), (f, i_s)):
                if key in table and table[key] != f:
                    self.err("E003", f"composite {key[0]} o {key[1]} contradicts the identity law", origin.get(key, b.span))
                table[key] = f
        conflict = self._saturate(table, labels, src, dst)
        if conflict:
            self.err("E003", conflict, b.span)
            return ids, table
        missing = [(g, f) for f in labels for g in labels if src[g] == dst[f] and (g, f) not in table]
        if missing:
            shown = ", ".join(f"{g} o {f}" for g, f in missing[:4])
            self.err("E004", f"category {b.name}: composites not determined: {shown}"
                     + (f" and {len(missing) - 4} more" if len(missing) > 4 else ""), b.span)
        return ids, table

    @staticmethod
    def _saturate(table, labels, src, dst) -> Optional[str]:
        """Fill g o f from known composites by associativity; report a contradiction."""
        by_result = {}
        changed = True
        while changed:
            changed = False
            by_result.clear()
            for (g, f), h in table.items():
                by_result.setdefault(h, []).append((g, f))
            for f in labels:
                for g in labels:
                    if src[g] != dst[f]:
                        continue
                    cands = set()
                    # f = f2 o f1: g o f = (g o f2) o f1
                    for f2, f1 in by_result.get(f, ()):
                        k = table.get((g, f2))
                        if k is not None and (k, f1) in table:
                            cands.add(table[(k, f1)])
                    # g = g2 o g1: g o f = g2 o (g1 o f)
                    for g2, g1 in by_result.get(g, ()):
                        k = table.get((g1, f))
                        if k is not None and (g2, k) in table:
                            cands.add(table[(g2, k)])
                    known = table.get((g, f))
                    if known is not None:
                        cands.add(known)
                    if len(cands) > 1:
                        return f"associativity forces {g} o {f} to be each of {sorted(cands)}"
                    if cands and known is None:
                        table[(g, f)] = cands.pop()
                        changed = True
        return None

    def _vector(self, v: Value, basis: list, span: Span, what: str):
        if isinstance(v, str):
            if v in basis:
                return tuple(Fraction(int(i == basis.index(v))) for i in range(len(basis)))
            if v == "0":
                return tuple(Fraction(0) for _ in basis)
            self.err("E002", f"{what}: {v!r} is not a basis arrow of the hom", span)
            return None
        if len(v) != len(basis):
            self.err("E005", f"{what}: vector has {len(v)} entries, the hom has dimension {len(basis)}", span)
            return None
        return v

    def _vect_table(self, b, objects, arrows, homs):
        ids, table = {}, {}
        for e in b.identities:
            x = e.key[0]
            if x not in objects:
                self.err("E002", f"identity for undeclared object {x!r}", e.span)
                continue
            v = self._vector(e.value, homs[(x, x)], e.span, f"identity of {x}")
            if v is not None:
                if x in ids and ids[x] != v:
                    self.err("E003", f"two identities declared for {x!r}", e.span)
                ids[x] = v
        for x in objects:
            if x not in ids:
                if f"id_{x}" in homs[(x, x)]:
                    ids[x] = self._vector(f"id_{x}", homs[(x, x)], b.span, f"identity of {x}")
                else:
                    self.err("E004", f"no identity given for {x!r}", b.object_spans.get(x, b.span))
        for e in b.compose:
            g, f = e.key
            bad = [n for n in (g, f) if n not in arrows]
            if bad:
                self.err("E002", f"undeclared arrow {bad[0]!r} in composite", e.span)
                continue
            if arrows[f].dst != arrows[g].src:
                self.err("E005", f"{g} o {f} is not composable", e.span)
                continue
            v = self._vector(e.value, homs[(arrows[f].src, arrows[g].dst)], e.span, f"{g} o {f}")
            if v is None:
                continue
            if (g, f) in table and table[(g, f)] != v:
                self.err("E003", f"{g} o {f} given twice with different values", e.span)
            table[(g, f)] = v
        missing = [(g, f) for f in arrows for g in arrows if arrows[g].src == arrows[f].dst and (g, f) not in table]
        if missing:
            shown = ", ".join(f"{g} o {f}" for g, f in missing[:4])
            self.err("E004", f"category {b.name}: vect composites must all be given; missing {shown}", b.span)
        return ids, table

    # functors
    def functor(self, b: FunctorBlock, cats: dict):
        from .core import Functor, Vec, validate_functor
        before = len(self.diags)
        for n in dict.fromkeys((b.src, b.dst)):
            if n not in cats:
                self.err("E002", f"functor {b.name} refers to unknown category {n!r}", b.span)
        if len(self.diags) > before:
            return None
        C, D = cats[b.src], cats[b.dst]
        if C.enrichment != D.enrichment:
            self.err("E005", f"functor {b.name} joins categories of different enrichment", b.span)
            return None
        objs = {}
        for e in b.objects:
            x, y = e.key[0], e.value
            if not C.has_object(x):
                self.err("E002", f"{x!r} is not an object of {C.name}", e.span)
            elif not D.has_object(y):
                self.err("E002", f"{y!r} is not an object of {D.name}", e.span)
            elif x in objs and objs[x] != y:
                self.err("E003", f"object {x!r} assigned twice", e.span)
            else:
                objs[x] = y
        for x in C.objects:
            if x not in objs:
                self.err("E004", f"functor {b.name} gives no image for object {x!r}", b.span)
        if len(self.diags) > before:
            return None
        mors = {}
        for e in b.arrows:
            u = e.key[0]
            if u not in C._src:
                self.err("E002", f"{u!r} is not an arrow of {C.name}", e.span)
                continue
            a, c = objs[C._src[u]], objs[C._dst[u]]
            if C.enrichment == "set":
                v = e.value
                if not isinstance(v, str) or v not in D._src:
                    self.err("E002", f"{format_value(v)} is not an arrow of {D.name}", e.span)
                    continue
                if (D._src[v], D._dst[v]) != (a, c):
                    self.err("E005", f"image of {u} must be an arrow {a} -> {c}", e.span)
                    continue
            else:
                v = self._vector(e.value, list(D.homs[(a, c)]), e.span, f"image of {u}")
                if v is None:
                    continue
                v = Vec(a, c, v)
            if u in mors and mors[u] != v:
                self.err("E003", f"arrow {u!r} assigned twice", e.span)
            mors[u] = v
        if len(self.diags) > before:
            return None
        if C.enrichment == "set":
            for x in C.objects:
                mors.setdefault(C.identities[x], D.identity(objs[x]))
            changed = True
            while changed:
                changed = False
                for (g, f), h in C.table.items():
                    if g in mors and f in mors:
                        img = D.compose(mors[g], mors[f])
                        if h not in mors:
                            mors[h] = img
                            changed = True
                        elif mors[h] != img:
                            self.err("E005", f"functor {b.name} does not preserve {g} o {f} = {h}", b.span)
                            return None
        missing = [u for u in C.labels if u not in mors]
        if missing:
            self.err("E004", f"functor {b.name} leaves {', '.join(missing[:4])} undetermined", b.span)
            return None
        F = Functor(C, D, objs, mors, b.name)
        for v in validate_functor(F).violations:
            self.err("E005", f"functor {b.name}: {v.message}", b.span)
        return F if len(self.diags) == before else None

    # transformations
    def nat(self, b: NatBlock, funs: dict, identity_functor):
        from .core import NatTransformation, Vec, validate_nat
        before = len(self.diags)
        ends = []
        for n in (b.source, b.target):
            if n == "id":
                ends.append(None)
            elif n in funs:
                ends.append(funs[n])
            else:
                self.err("E002", f"nat {b.name} refers to unknown functor {n!r}", b.span)
        if len(self.diags) > before:
            return None
        known = [F for F in ends if F is not None]
        if not known:
            self.err("E004", f"nat {b.name}: at least one side must be a declared functor", b.span)
            return None
        C = known[0].src
        S, T = (F if F is not None else identity_functor(C) for F in ends)
        if S.src != T.src or S.dst != T.dst:
            self.err("E005", f"nat {b.name}: source and target functors have different ends", b.span)
            return None
        D = S.dst
        comps, tried = {}, set()
        for e in b.components:
            x = e.key[0]
            tried.add(x)
            if not C.has_object(x):
                self.err("E002", f"{x!r} is not an object of {C.name}", e.span)
                continue
            a, c = S.obj(x), T.obj(x)
            if D.enrichment == "set":
                v = e.value
                if not isinstance(v, str) or v not in D._src:
                    self.err("E002", f"{format_value(v)} is not an arrow of {D.name}", e.span)
                    continue
                if (D._src[v], D._dst[v]) != (a, c):
                    self.err("E005", f"component at {x} must be an arrow {a} -> {c}", e.span)
                    continue
            else:
                v = self._vector(e.value, list(D.homs[(a, c)]), e.span, f"component at {x}")
                if v is None:
                    continue
                v = Vec(a, c, v)
            if x in comps and comps[x] != v:
                self.err("E003", f"component at {x!r} given twice", e.span)
            comps[x] = v
        missing = [x for x in C.objects if x not in tried]
        if missing:
            self.err("E004", f"nat {b.name} has no component at {', '.join(map(str, missing[:4]))}", b.span)
        if len(self.diags) > before:
            return None
        t = NatTransformation(S, T, comps, b.name)
        for v in validate_nat(t).violations:
            self.err("E005", f"nat {b.name}: {v.message}", b.span)
        return t if len(self.diags) == before else None


def build(spec: SpecFile) -> Model:
    return _Builder(spec).build()


def load(text: str) -> Model:
    return build(parse(text))


def load_file(path) -> Model:
    with open(path, encoding="utf-8") as fh:
        return load(fh.read())
