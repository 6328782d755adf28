"""A small deterministic expression language for scalar fields.

Grammar: numbers; identifiers; binary + - * / ^ (caret right-associative,
the rest left-associative with standard precedence); unary minus; calls
sqrt, exp, log, sin, cos, abs2, re, im, conj and i() for the imaginary unit;
parentheses.  Every expression evaluates in the complex jet ring; variables
must all be declared in the binding set (no defaults, no coercion).
"""

from __future__ import annotations

from dataclasses import dataclass

from . import jets
from .errors import ExprSyntaxError, UnboundVariable, UnknownFunction
from .jets import ComplexJet

FUNCTIONS = ("sqrt", "exp", "log", "sin", "cos", "abs2", "re", "im", "conj", "i")


# -- AST --------------------------------------------------------------------

@dataclass(frozen=True)
class Num:
    value: float


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Neg:
    arg: object


@dataclass(frozen=True)
class BinOp:
    op: str
    left: object
    right: object


@dataclass(frozen=True)
class Call:
    func: str
    args: tuple


# -- tokenizer ---------------------------------------------------------------

@dataclass(frozen=True)
class Token:
    kind: str  # num | name | op | lparen | rparen | comma | end
    text: str
    line: int
    column: int


def _tokenize(source: str) -> list[Token]:
    toks = []
    line, col = 1, 1
    i = 0
    n = len(source)
    while i < n:
        ch = source[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch.isspace():
            i += 1
            col += 1
            continue
        start_col = col
        if ch.isdigit() or (ch == "." and i + 1 < n and source[i + 1].isdigit()):
            j = i
            seen_dot = False
            while j < n and (source[j].isdigit() or (source[j] == "." and not seen_dot)):
                seen_dot = seen_dot or source[j] == "."
                j += 1
            if j < n and source[j] in "eE":
                k = j + 1
                if k < n and source[k] in "+-":
                    k += 1
                if k < n and source[k].isdigit():
                    while k < n and source[k].isdigit():
                        k += 1
                    j = k
            toks.append(Token("num", source[i:j], line, start_col))
            col += j - i
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (source[j].isalnum() or source[j] == "_"):
                j += 1
            toks.append(Token("name", source[i:j], line, start_col))
            col += j - i
            i = j
            continue
        if ch in "+-*/^":
            toks.append(Token("op", ch, line, start_col))
        elif ch == "(":
            toks.append(Token("lparen", ch, line, start_col))
        elif ch == ")":
            toks.append(Token("rparen", ch, line, start_col))
        elif ch == ",":
            toks.append(Token("comma", ch, line, start_col))
        else:
            raise ExprSyntaxError(f"unexpected character {ch!r}", line, start_col, expected=())
        i += 1
        col += 1
    toks.append(Token("end", "", line, col))
    return toks


# -- parser ------------------------------------------------------------------

class _Parser:
    def __init__(self, tokens: list[Token]):
        self.toks = tokens
        self.pos = 0

    def peek(self) -> Token:
        return self.toks[self.pos]

    def next(self) -> Token:
        t = self.toks[self.pos]
        self.pos += 1
        return t

    def expect(self, kind: str, expected: str) -> Token:
        t = self.peek()
        if t.kind != kind:
            raise ExprSyntaxError(
                f"expected {expected}, found {t.text or 'end of input'!r}",
                t.line,
                t.column,
                expected=(expected,),
            )
        return self.next()

    # additive -> multiplicative (('+' | '-') multiplicative)*
    def additive(self):
        node = self.multiplicative()
        while self.peek().kind == "op" and self.peek().text in "+-":
            op = self.next().text
            node = BinOp(op, node, self.multiplicative())
        return node

    def multiplicative(self):
        node = self.unary()
        while self.peek().kind == "op" and self.peek().text in "*/":
            op = self.next().text
            node = BinOp(op, node, self.unary())
        return node

    def unary(self):
        if self.peek().kind == "op" and self.peek().text == "-":
            self.next()
            return Neg(self.unary())
        if self.peek().kind == "op" and self.peek().text == "+":
            self.next()
            return self.unary()
        return self.power()

    # power is right-associative and binds tighter than unary minus on the left
    def power(self):
        base = self.atom()
        if self.peek().kind == "op" and self.peek().text == "^":
            self.next()
            return BinOp("^", base, self.unary())
        return base

    def atom(self):
        t = self.peek()
        if t.kind == "num":
            self.next()
            return Num(float(t.text))
        if t.kind == "name":
            self.next()
            if self.peek().kind == "lparen":
                if t.text not in FUNCTIONS:
                    raise UnknownFunction(f"unknown function {t.text!r} at line {t.line}, column {t.column}")
                self.next()
                args = []
                if self.peek().kind != "rparen":
                    args.append(self.additive())
                    while self.peek().kind == "comma":
                        self.next()
                        args.append(self.additive())
                self.expect("rparen", ")")
                want = 0 if t.text == "i" else 1
                if len(args) != want:
                    raise ExprSyntaxError(
                        f"{t.text} takes {want} argument(s), got {len(args)}", t.line, t.column
                    )
                return Call(t.text, tuple(args))
            return Var(t.text)
        if t.kind == "lparen":
            self.next()
            node = self.additive()
            self.expect("rparen", ")")
            return node
        raise ExprSyntaxError(
            f"expected a value, found {t.text or 'end of input'!r}",
            t.line,
            t.column,
            expected=("number", "identifier", "("),
        )


def parse(source: str):
    p = _Parser(_tokenize(source))
    node = p.additive()
    t = p.peek()
    if t.kind != "end":
        raise ExprSyntaxError(f"unexpected {t.text!r}", t.line, t.column, expected=("end of input",))
    return node


# -- printing (parse -> print -> parse is the identity) ----------------------

_PREC = {"+": 1, "-": 1, "*": 2, "/": 2, "^": 4}


def to_source(node, parent_prec: int = 0) -> str:
    if isinstance(node, Num):
        return repr(node.value)
    if isinstance(node, Var):
        return node.name
    if isinstance(node, Neg):
        inner = to_source(node.arg, 3)
        s = f"-{inner}"
        return f"({s})" if parent_prec > 3 else s
    if isinstance(node, Call):
        return f"{node.func}({', '.join(to_source(a) for a in node.args)})"
    if isinstance(node, BinOp):
        prec = _PREC[node.op]
        left = to_source(node.left, prec)
        right = to_source(node.right, prec + (0 if node.op == "^" else 1))
        s = f"{left} {node.op} {right}"
        return f"({s})" if prec < parent_prec or (node.op == "^" and parent_prec == 4) else s
    raise TypeError(f"not an AST node: {node!r}")


# -- evaluation ---------------------------------------------------------------

def variables(node) -> set[str]:
    if isinstance(node, Var):
        return {node.name}
    if isinstance(node, Neg):
        return variables(node.arg)
    if isinstance(node, BinOp):
        return variables(node.left) | variables(node.right)
    if isinstance(node, Call):
        out = set()
        for a in node.args:
            out |= variables(a)
        return out
    return set()


def evaluate(node, bindings: dict) -> ComplexJet:
    """Evaluate in the complex jet ring; bindings map names to jets/numbers."""

    def ev(n) -> ComplexJet:
        if isinstance(n, Num):
            return ComplexJet._lift(n.value)
        if isinstance(n, Var):
            if n.name not in bindings:
                raise UnboundVariable(f"variable {n.name!r} is not bound")
            return ComplexJet._lift(bindings[n.name])
        if isinstance(n, Neg):
            return -ev(n.arg)
        if isinstance(n, BinOp):
            a = ev(n.left)
            if n.op == "^":
                b = ev(n.right)
                import numpy as _np

                nonconst = max(
                    float(_np.max(_np.abs(b.re.grad), initial=0.0)),
                    float(_np.max(_np.abs(b.im.grad), initial=0.0)),
                    float(_np.max(_np.abs(b.im.value), initial=0.0)),
                )
                if nonconst > 1e-14:
                    raise UnknownFunction("^ needs a constant real exponent")
                return jets.power(a, float(_np.min(b.re.value)))
            b = ev(n.right)
            if n.op == "+":
                return a + b
            if n.op == "-":
                return a - b
            if n.op == "*":
                return a * b
            return a / b
        if isinstance(n, Call):
            if n.func == "i":
                return jets.imaginary_unit()
            (arg,) = n.args
            a = ev(arg)
            if n.func == "sqrt":
                return ComplexJet._lift(jets.sqrt(a))
            if n.func == "exp":
                return jets.exp(a)
            if n.func == "log":
                return ComplexJet._lift(jets.log(a))
            if n.func == "sin":
                return jets.sin(a)
            if n.func == "cos":
                return jets.cos(a)
            if n.func == "abs2":
                return ComplexJet._lift(jets.abs2(a))
            if n.func == "re":
                return ComplexJet._lift(a.re)
            if n.func == "im":
                return ComplexJet._lift(a.im)
            if n.func == "conj":
                return a.conj()
            raise UnknownFunction(n.func)
        raise TypeError(f"not an AST node: {n!r}")

    return ev(node)


def compile_program(source: str, names: tuple[str, ...]):
    """Compile source into a chart program over real coordinate jets.

    ``names`` declares the chart bindings: 4 real names bind the coordinate
    jets directly; 2 names bind the complex pairs (x0 + i x1, x2 + i x3).
    """
    ast = parse(source)
    free = variables(ast)
    allowed = set(names)
    if not free <= allowed:
        raise UnboundVariable(f"undeclared variable(s) {sorted(free - allowed)} in {source!r}")

    if len(names) == 2:
        def program(xs):
            z1, z2 = jets.complex_pair(xs)
            return evaluate(ast, {names[0]: z1, names[1]: z2})

    elif len(names) == 4:
        def program(xs):
            return evaluate(ast, dict(zip(names, xs)))

    else:
        raise ValueError("binding sets have 2 complex or 4 real names")
    return program
