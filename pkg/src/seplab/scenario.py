"""Scenario files: points, ideals, bounds and tasks in a small text format.

::

    nvars = 2
    bounds { D = 12, gamma_max = 20 }
    point alpha = branch { x = "t^2", y = "t^4 + 2*t^5" }
    point d = divisorial { chain = [(x, 0), (x, 1)], cut = "0+", eps = +1 }
    point alpha' = lift alpha
    point beta' = lift beta along alpha
    ideal I = [ "y - x^2", "x*y", "y^2" ]
    sep alpha beta expect gamma = 5, ideal = I

Every error is a :class:`ParseError` or :class:`ScopeError` carrying the
line and column.
"""

import re
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import ParseError, ScopeError, SeplabError
from .exact import TPoly, TRat
from .point import BranchPoint, ChainStep, Cut, DivisorialPoint
from .ring import Ideal, Poly

VARS = "xyz"


# ---------------------------------------------------------------------------
# expressions


_EXPR_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_]\w*)|(.))")


def _expr_tokens(text, line, col0):
    out = []
    pos = 0
    while pos < len(text):
        m = _EXPR_TOKEN.match(text, pos)
        if m.group(0).strip() == "":
            break
        start = m.start(m.lastindex)
        tok = m.group(m.lastindex)
        kind = {1: "num", 2: "name", 3: "op"}[m.lastindex]
        if kind == "op" and tok not in "+-*/^()":
            raise ParseError(f"unexpected character {tok!r}", line, col0 + start)
        out.append((kind, tok, col0 + start))
        pos = m.end()
    out.append(("end", "", col0 + len(text)))
    return out


class _ExprParser:
    """Recursive descent over ``+ - * / ^`` and parentheses."""

    def __init__(self, text, variables, make_var, make_const, line=None, col=1):
        self.toks = _expr_tokens(text, line, col)
        self.i = 0
        self.variables = variables
        self.make_var = make_var
        self.make_const = make_const
        self.line = line

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def fail(self, msg, tok=None):
        tok = tok or self.peek()
        raise ParseError(msg, self.line, tok[2])

    def parse(self):
        v = self.sum()
        if self.peek()[0] != "end":
            self.fail(f"unexpected {self.peek()[1]!r}")
        return v

    def sum(self):
        if self.peek()[1] in ("+", "-"):
            neg = self.take()[1] == "-"
            v = self.product()
            v = -v if neg else v
        else:
            v = self.product()
        while self.peek()[1] in ("+", "-"):
            op = self.take()[1]
            rhs = self.product()
            v = v + rhs if op == "+" else v - rhs
        return v

    def product(self):
        v = self.power()
        while True:
            tok = self.peek()
            if tok[1] == "*":
                self.take()
                v = v * self.power()
            elif tok[1] == "/":
                self.take()
                rhs_tok = self.peek()
                rhs = self.power()
                v = self.divide(v, rhs, rhs_tok)
            elif tok[0] in ("num", "name") or tok[1] == "(":
                v = v * self.power()
            else:
                return v

    def divide(self, a, b, tok):
        if isinstance(b, Fraction):
            if not b:
                self.fail("division by zero", tok)
            return a / b if isinstance(a, Fraction) else a * (1 / b)
        if isinstance(a, Fraction):
            a = self.make_const(a)
        try:
            return a / b
        except (TypeError, ValueError, ZeroDivisionError) as exc:
            self.fail(f"cannot divide here: {exc}", tok)

    def power(self):
        base = self.atom()
        if self.peek()[1] == "^":
            caret = self.take()
            tok = self.peek()
            if tok[0] != "num":
                self.fail("exponent must be a non-negative integer", caret if tok[0] == "end" else tok)
            self.take()
            return base ** int(tok[1])
        return base

    def atom(self):
        tok = self.take()
        if tok[0] == "num":
            return Fraction(int(tok[1]))
        if tok[0] == "name":
            if tok[1] in self.variables:
                return self.make_var(tok[1])
            self.fail(f"unknown symbol {tok[1]!r} (only rational expressions in {', '.join(self.variables)})", tok)
        if tok[1] == "(":
            v = self.sum()
            if self.take()[1] != ")":
                self.fail("expected ')'", self.toks[self.i - 1])
            return v
        self.fail("expected a number, variable or '('" if tok[0] != "end" else "unexpected end of expression", tok)


def _lift_const(v, make_const):
    return make_const(v) if isinstance(v, Fraction) else v


def parse_poly(text, nvars=2, line=None, col=1):
    """Polynomial in ``x, y[, z]`` with rational coefficients."""
    names = VARS[:nvars]
    p = _ExprParser(
        text,
        names,
        lambda v: Poly.var(names.index(v), nvars),
        lambda c: Poly.const(c, nvars),
        line,
        col,
    )
    return _lift_const(p.parse(), lambda c: Poly.const(c, nvars))


def parse_t(text, line=None, col=1):
    """Rational function of ``t``."""
    p = _ExprParser(text, "t", lambda v: TRat(TPoly([0, 1])), lambda c: TRat(c), line, col)
    v = p.parse()
    return TRat(v) if isinstance(v, Fraction) else v


# ---------------------------------------------------------------------------
# scenario tokens


_TOKEN = re.compile(
    r"""(?P<ws>[ \t\r]+)|(?P<comment>\#[^\n]*)|(?P<nl>\n)
      |(?P<str>"[^"\n]*")
      |(?P<num>[+-]?\d+(?:/\d+)?)
      |(?P<name>[A-Za-z_][\w'\-]*)
      |(?P<punct>[{}\[\](),=])""",
    re.VERBOSE,
)


@dataclass(frozen=True)
class Tok:
    kind: str
    text: str
    line: int
    col: int


def _tokens(text):
    out = []
    line, start, pos = 1, 0, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - start + 1)
        kind = m.lastgroup
        if kind == "nl":
            out.append(Tok("nl", "\n", line, pos - start + 1))
            line += 1
            start = m.end()
        elif kind not in ("ws", "comment"):
            out.append(Tok(kind, m.group(), line, pos - start + 1))
        pos = m.end()
    out.append(Tok("nl", "\n", line, pos - start + 1))
    out.append(Tok("eof", "", line, pos - start + 1))
    return out


# ---------------------------------------------------------------------------
# scenario model


@dataclass(frozen=True)
class Task:
    command: str
    args: tuple
    expect: tuple = ()
    line: int = 0

    def text(self):
        parts = [self.command] + [_render_arg(a) for a in self.args]
        if self.expect:
            parts.append("expect")
            parts.append(", ".join(f"{k} = {_render_arg(v)}" for k, v in self.expect))
        return " ".join(parts)


@dataclass
class Scenario:
    nvars: int = 2
    points: dict = field(default_factory=dict)
    ideals: dict = field(default_factory=dict)
    bounds: dict = field(default_factory=dict)
    tasks: list = field(default_factory=list)

    def __eq__(self, other):
        if not isinstance(other, Scenario):
            return NotImplemented
        strip = lambda ts: [(t.command, t.args, t.expect) for t in ts]
        return (
            self.nvars == other.nvars
            and self.points == other.points
            and list(self.points) == list(other.points)
            and self.ideals == other.ideals
            and self.bounds == other.bounds
            and strip(self.tasks) == strip(other.tasks)
        )


DEFAULT_BOUNDS = {"D": 12, "N": None, "gamma_max": 20, "kmax": 4}


@dataclass(frozen=True)
class Chain:
    steps: tuple


@dataclass(frozen=True)
class Str:
    value: str


@dataclass(frozen=True)
class StrList:
    values: tuple


def _render_arg(a):
    if isinstance(a, Str):
        return f'"{a.value}"'
    if isinstance(a, StrList):
        return "[" + ", ".join(f'"{v}"' for v in a.values) + "]"
    if isinstance(a, Chain):
        return "[" + ", ".join(str(s) for s in a.steps) + "]"
    if isinstance(a, Fraction):
        return str(a)
    return str(a)


# ---------------------------------------------------------------------------
# scenario parser


class _Parser:
    def __init__(self, text):
        self.toks = _tokens(text)
        self.i = 0
        self.sc = Scenario()
        self.sc.bounds = dict(DEFAULT_BOUNDS)
        self.nvars_fixed = False

    def peek(self, k=0):
        return self.toks[self.i + k]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def fail(self, msg, tok=None):
        tok = tok or self.peek()
        raise ParseError(msg, tok.line, tok.col)

    def expect(self, text):
        t = self.take()
        if t.text != text:
            self.fail(f"expected {text!r}, found {t.text or t.kind!r}", t)
        return t

    def name(self):
        t = self.take()
        if t.kind != "name":
            self.fail(f"expected a name, found {t.text or t.kind!r}", t)
        return t

    def skip_nl(self, inside=True):
        while self.peek().kind == "nl":
            self.take()

    def end_statement(self):
        t = self.take()
        if t.kind not in ("nl", "eof"):
            self.fail(f"unexpected {t.text!r} at end of statement", t)

    def parse(self):
        while True:
            self.skip_nl()
            t = self.peek()
            if t.kind == "eof":
                return self.sc
            if t.kind != "name":
                self.fail(f"expected a statement, found {t.text!r}")
            word = t.text
            if word == "nvars":
                self.stmt_nvars()
            elif word in ("bounds", "bound"):
                self.stmt_bounds()
            elif word == "point":
                self.stmt_point()
            elif word == "ideal":
                self.stmt_ideal()
            else:
                self.stmt_task()

    # -- statements

    def stmt_nvars(self):
        self.take()
        self.expect("=")
        t = self.take()
        if t.text not in ("2", "3"):
            self.fail("nvars must be 2 or 3", t)
        if self.sc.points or self.sc.ideals:
            self.fail("nvars must come before points and ideals", t)
        self.sc.nvars = int(t.text)
        self.end_statement()

    def stmt_bounds(self):
        self.take()
        self.expect("{")
        self.skip_nl()
        while self.peek().text != "}":
            key = self.name()
            if key.text not in DEFAULT_BOUNDS:
                self.fail(f"unknown bound {key.text!r}", key)
            self.expect("=")
            v = self.take()
            if v.kind != "num" or "/" in v.text or int(v.text) < 1:
                self.fail("bounds are positive integers", v)
            self.sc.bounds[key.text] = int(v.text)
            self.skip_nl()
            if self.peek().text == ",":
                self.take()
                self.skip_nl()
        self.take()
        self.end_statement()

    def define(self, kind, tok):
        if tok.text in self.sc.points or tok.text in self.sc.ideals:
            self.fail(f"name {tok.text!r} is already defined", tok)

    def stmt_point(self):
        self.take()
        tok = self.name()
        self.define("point", tok)
        self.expect("=")
        kind = self.name()
        if kind.text == "branch":
            pt = self.branch_block(tok.text)
        elif kind.text == "divisorial":
            pt = self.divisorial_block(tok.text)
        elif kind.text == "lift":
            pt = self.lift_expr(tok.text)
        else:
            self.fail(f"unknown point kind {kind.text!r}", kind)
        self.sc.points[tok.text] = pt
        self.end_statement()

    def fields(self):
        self.expect("{")
        out = {}
        self.skip_nl()
        while self.peek().text != "}":
            key = self.name()
            if key.text in out:
                self.fail(f"duplicate field {key.text!r}", key)
            self.expect("=")
            out[key.text] = (key, self.value())
            self.skip_nl()
            if self.peek().text == ",":
                self.take()
                self.skip_nl()
            elif self.peek().text != "}":
                self.fail("expected ',' or '}'")
        self.take()
        return out

    def value(self):
        t = self.peek()
        if t.kind == "str":
            self.take()
            return ("str", t)
        if t.kind == "num":
            self.take()
            return ("num", t)
        if t.text == "[":
            return ("list", self.bracket_list())
        if t.kind == "name":
            self.take()
            return ("name", t)
        self.fail(f"expected a value, found {t.text or t.kind!r}")

    def bracket_list(self):
        open_tok = self.expect("[")
        items = []
        self.skip_nl()
        while self.peek().text != "]":
            t = self.peek()
            if t.text == "(":
                items.append(("step", self.step_tuple()))
            elif t.kind == "str":
                items.append(("str", self.take()))
            else:
                self.fail("expected a string or a chart step")
            self.skip_nl()
            if self.peek().text == ",":
                self.take()
                self.skip_nl()
            elif self.peek().text != "]":
                self.fail("expected ',' or ']'")
        self.take()
        kinds = {k for k, _ in items}
        if len(kinds) > 1:
            self.fail("a list mixes strings and chart steps", open_tok)
        return (open_tok, items)

    def step_tuple(self):
        open_tok = self.expect("(")
        var = self.name()
        if var.text not in VARS[: self.sc.nvars]:
            self.fail(f"unknown divisor {var.text!r}", var)
        consts = []
        while self.peek().text == ",":
            self.take()
            c = self.take()
            if c.kind != "num":
                self.fail("chart translations are rationals", c)
            consts.append(Fraction(c.text))
        self.expect(")")
        div = VARS.index(var.text)
        n = self.sc.nvars
        if len(consts) != n - 1:
            self.fail(f"a chart step needs {n - 1} translation(s)", open_tok)
        shifts = list(consts)
        shifts.insert(div, Fraction(0))
        try:
            return ChainStep(div, tuple(shifts))
        except ValueError as exc:
            self.fail(str(exc), open_tok)

    def parse_poly_tok(self, tok):
        return parse_poly(tok.text[1:-1], self.sc.nvars, tok.line, tok.col + 1)

    def branch_block(self, name):
        f = self.fields()
        names = VARS[: self.sc.nvars]
        imgs = []
        for v in names:
            if v not in f:
                self.fail(f"branch point is missing the image of {v}")
            key, (kind, tok) = f.pop(v)
            if kind != "str":
                self.fail("images are quoted expressions in t", key)
            imgs.append(parse_t(tok.text[1:-1], tok.line, tok.col + 1))
        if f:
            key = next(iter(f.values()))[0]
            self.fail(f"unknown field {key.text!r}", key)
        try:
            return BranchPoint(imgs, name)
        except ValueError as exc:
            self.fail(str(exc))

    def divisorial_block(self, name):
        if self.sc.nvars != 2:
            self.fail("divisorial points need nvars = 2")
        f = self.fields()
        for req in ("chain", "cut"):
            if req not in f:
                self.fail(f"divisorial point is missing {req!r}")
        key, (kind, val) = f.pop("chain")
        if kind != "list" or any(k != "step" for k, _ in val[1]):
            self.fail("chain must be a list of chart steps", key)
        chain = [s for _, s in val[1]]
        key, (kind, tok) = f.pop("cut")
        if kind != "str":
            self.fail("cut is a quoted string such as \"0+\" or \"-inf\"", key)
        try:
            cut = Cut.parse(tok.text[1:-1])
        except (ValueError, ZeroDivisionError) as exc:
            self.fail(str(exc), tok)
        eps = 1
        if "eps" in f:
            key, (kind, tok) = f.pop("eps")
            if kind != "num" or tok.text.lstrip("+-") != "1":
                self.fail("eps is +1 or -1", tok)
            eps = -1 if tok.text.startswith("-") else 1
        if f:
            key = next(iter(f.values()))[0]
            self.fail(f"unknown field {key.text!r}", key)
        try:
            return DivisorialPoint(chain, cut, eps, name)
        except ValueError as exc:
            self.fail(str(exc))

    def lookup_point(self, tok):
        if tok.text not in self.sc.points:
            raise ScopeError(f"undefined point {tok.text!r} (line {tok.line}, column {tok.col})")
        return self.sc.points[tok.text]

    def lift_expr(self, name):
        from .blowup import transform_point

        src_tok = self.name()
        src = self.lookup_point(src_tok)
        step = None
        if self.peek().text == "along":
            self.take()
            ref_tok = self.name()
            step, _ = transform_point(self.lookup_point(ref_tok))
        try:
            _, pt = transform_point(src, step)
        except SeplabError as exc:
            raise type(exc)(f"{exc.message} (line {src_tok.line}, column {src_tok.col})") from None
        if isinstance(pt, BranchPoint):
            return BranchPoint(pt.images, name)
        return DivisorialPoint(pt.chain, pt.cut, pt.eps, name)

    def stmt_ideal(self):
        self.take()
        tok = self.name()
        self.define("ideal", tok)
        self.expect("=")
        self.sc.ideals[tok.text] = self.ideal_literal()
        self.end_statement()

    def ideal_literal(self):
        open_tok, items = self.bracket_list()
        if any(k != "str" for k, _ in items):
            self.fail("ideal generators are quoted polynomials", open_tok)
        if not items:
            return Ideal([], self.sc.nvars)
        return Ideal([self.parse_poly_tok(t) for _, t in items], self.sc.nvars)

    def task_arg(self):
        t = self.peek()
        if t.kind == "str":
            self.take()
            return Str(t.text[1:-1])
        if t.kind == "num":
            self.take()
            return Fraction(t.text)
        if t.text == "[":
            open_tok, items = self.bracket_list()
            if items and items[0][0] == "step":
                return Chain(tuple(s for _, s in items))
            return StrList(tuple(s.text[1:-1] for _, s in items))
        if t.kind == "name":
            self.take()
            return t.text
        self.fail(f"unexpected {t.text!r}")

    def stmt_task(self):
        head = self.take()
        args = []
        while self.peek().kind not in ("nl", "eof") and self.peek().text != "expect":
            args.append(self.task_arg())
        expect = []
        if self.peek().text == "expect":
            self.take()
            while True:
                key = self.name()
                self.expect("=")
                expect.append((key.text, self.task_arg()))
                if self.peek().text != ",":
                    break
                self.take()
        self.end_statement()
        self.sc.tasks.append(Task(head.text, tuple(args), tuple(expect), head.line))


def parse_scenario(text):
    """Parse scenario text; raises ``ParseError``/``ScopeError``."""
    sc = _Parser(text).parse()
    from .cli import validate_task

    for task in sc.tasks:
        validate_task(task, sc)
    return sc


def render_scenario(sc):
    lines = [f"nvars = {sc.nvars}"]
    b = {k: v for k, v in sc.bounds.items() if v is not None}
    lines.append("bounds { " + ", ".join(f"{k} = {v}" for k, v in b.items()) + " }")
    for name, pt in sc.points.items():
        lines.append(f"point {name} = {pt}")
    for name, I in sc.ideals.items():
        lines.append(f"ideal {name} = [" + ", ".join(f'"{g}"' for g in I.gens) + "]")
    for t in sc.tasks:
        lines.append(t.text())
    return "\n".join(lines) + "\n"
