"""Tokenizer, grammar, and evaluator for operator expressions.

Grammar (authoritative):

    expr   := term (('+'|'-') term)*
    term   := factor ('*' factor)*
    factor := '-' factor | atom ['^' ['-'] INT]
    atom   := INT ['/' INT] | IDENT | '(' expr ')'

Multiplication is always explicit (no juxtaposition) and exponents are
integer literals only.  Evaluation is bottom-up with every product going
through the normal-ordering multiplication, so results are canonical by
construction.
"""

from __future__ import annotations

from dataclasses import dataclass

from .coefficients import Context, LAURENT, Monomial
from .errors import EvalError, ParseError
from .operators import WeylElement, w_mul, wderivation, wfrom_a, widentity

INT = "integer"
IDENT = "identifier"
PLUS = "plus"
MINUS = "minus"
STAR = "star"
CARET = "caret"
SLASH = "slash"
LPAREN = "lparen"
RPAREN = "rparen"
END = "end"

_PUNCT = {"+": PLUS, "-": MINUS, "*": STAR, "^": CARET, "/": SLASH, "(": LPAREN, ")": RPAREN}


@dataclass(frozen=True, slots=True)
class Token:
    kind: str
    text: str
    pos: int


def tokenize(text: str) -> list[Token]:
    out = []
    i = 0
    n = len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
            continue
        if c.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            out.append(Token(INT, text[i:j], i))
            i = j
            continue
        if c.isalpha():
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            out.append(Token(IDENT, text[i:j], i))
            i = j
            continue
        kind = _PUNCT.get(c)
        if kind is None:
            raise ParseError(f"unexpected character {c!r}", i)
        out.append(Token(kind, c, i))
        i += 1
    out.append(Token(END, "", n))
    return out


# -- abstract syntax ----------------------------------------------------------


@dataclass(frozen=True)
class ScalarLit:
    numerator: int
    denominator: int
    pos: int


@dataclass(frozen=True)
class NameRef:
    name: str
    pos: int


@dataclass(frozen=True)
class Neg:
    arg: object
    pos: int


@dataclass(frozen=True)
class Sum:
    left: object
    right: object


@dataclass(frozen=True)
class Diff:
    left: object
    right: object


@dataclass(frozen=True)
class Product:
    left: object
    right: object


@dataclass(frozen=True)
class Power:
    base: object
    exponent: int
    pos: int


class _Parser:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.i = 0

    def peek(self) -> Token:
        return self.tokens[self.i]

    def advance(self) -> Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, kind: str) -> Token:
        tok = self.peek()
        if tok.kind != kind:
            raise ParseError(f"expected {kind}, found {tok.kind} {tok.text!r}", tok.pos)
        return self.advance()

    def parse_expr(self):
        node = self.parse_term()
        while self.peek().kind in (PLUS, MINUS):
            op = self.advance()
            rhs = self.parse_term()
            node = Sum(node, rhs) if op.kind == PLUS else Diff(node, rhs)
        return node

    def parse_term(self):
        node = self.parse_factor()
        while self.peek().kind == STAR:
            self.advance()
            node = Product(node, self.parse_factor())
        return node

    def parse_factor(self):
        tok = self.peek()
        if tok.kind == MINUS:
            self.advance()
            return Neg(self.parse_factor(), tok.pos)
        node = self.parse_atom()
        if self.peek().kind == CARET:
            caret = self.advance()
            sign = 1
            if self.peek().kind == MINUS:
                self.advance()
                sign = -1
            exp_tok = self.expect(INT)
            return Power(node, sign * int(exp_tok.text), caret.pos)
        return node

    def parse_atom(self):
        tok = self.peek()
        if tok.kind == INT:
            self.advance()
            num = int(tok.text)
            if self.peek().kind == SLASH:
                self.advance()
                den_tok = self.expect(INT)
                return ScalarLit(num, int(den_tok.text), tok.pos)
            return ScalarLit(num, 1, tok.pos)
        if tok.kind == IDENT:
            self.advance()
            return NameRef(tok.text, tok.pos)
        if tok.kind == LPAREN:
            self.advance()
            node = self.parse_expr()
            self.expect(RPAREN)
            return node
        raise ParseError(
            f"expected one of integer, identifier, '-', '('; found {tok.kind} {tok.text!r}",
            tok.pos,
        )


def parse(tokens: list[Token]):
    p = _Parser(tokens)
    node = p.parse_expr()
    tok = p.peek()
    if tok.kind != END:
        raise ParseError(f"unexpected trailing {tok.kind} {tok.text!r}", tok.pos)
    return node


def parse_text(text: str):
    return parse(tokenize(text))


# -- evaluation ----------------------------------------------------------------


def evaluate(ast, ctx: Context) -> WeylElement:
    """Bottom-up evaluation into normal form."""
    if isinstance(ast, ScalarLit):
        if ast.denominator == 0:
            raise EvalError("zero denominator", ast.pos)
        num = ctx.spec.from_int(ast.numerator)
        if ast.denominator != 1:
            den = ctx.spec.from_int(ast.denominator)
            if den.is_zero():
                raise EvalError(
                    f"denominator {ast.denominator} vanishes in {ctx.spec}", ast.pos
                )
            num = num * den.inverse()
        return widentity(ctx).scale(num)
    if isinstance(ast, NameRef):
        if ctx.has_variable(ast.name):
            return wfrom_a(ctx.var(ast.name))
        if ctx.has_derivation(ast.name):
            return wderivation(ctx, ast.name)
        raise EvalError(f"unknown identifier {ast.name!r}", ast.pos)
    if isinstance(ast, Neg):
        return -evaluate(ast.arg, ctx)
    if isinstance(ast, Sum):
        return evaluate(ast.left, ctx) + evaluate(ast.right, ctx)
    if isinstance(ast, Diff):
        return evaluate(ast.left, ctx) - evaluate(ast.right, ctx)
    if isinstance(ast, Product):
        return w_mul(evaluate(ast.left, ctx), evaluate(ast.right, ctx))
    if isinstance(ast, Power):
        base = evaluate(ast.base, ctx)
        if ast.exponent >= 0:
            out = widentity(ctx)
            for _ in range(ast.exponent):
                out = w_mul(out, base)
            return out
        inverse = _invert_unit(base, ctx, ast.pos)
        out = widentity(ctx)
        for _ in range(-ast.exponent):
            out = w_mul(out, inverse)
        return out
    raise EvalError(f"unknown syntax node {ast!r}")


def _invert_unit(base: WeylElement, ctx: Context, pos: int) -> WeylElement:
    """Invert a unit of the coefficient algebra: one scalar*monomial term
    whose variables are all Laurent."""
    if not base.is_a_only():
        raise EvalError("negative power of a derivation", pos)
    single = base.a_part().single_term()
    if single is None:
        raise EvalError("negative power of a non-monomial element", pos)
    m, c = single
    inverted = {}
    for i, e in m.exps:
        var = ctx.variables[i]
        if var.kind != LAURENT:
            raise EvalError(f"negative power of polynomial variable {var.name!r}", pos)
        inverted[i] = -e
    coeff = c.inverse()
    from .coefficients import AElement

    return wfrom_a(AElement(ctx, {Monomial.make(inverted): coeff}))


def evaluate_text(text: str, ctx: Context) -> WeylElement:
    return evaluate(parse_text(text), ctx)
