"""Polynomial expression parsing for the CLI.

Grammar: integers, rational literals "p/q", named variables, binary + - *,
^ with a nonnegative integer exponent, and parentheses.  Precedence is
^ above unary minus above * above binary +/-.  Floats are rejected at the
lexer (the package promise is exactness); '/' is only the literal
separator of a rational constant.
"""

from dataclasses import dataclass
from fractions import Fraction

from .errors import ParseError
from .fields import FunctionField
from .poly import DensePoly, format_poly


@dataclass(frozen=True)
class PolyExpr:
    """Parsed expression: an AST of nested tuples plus the variables seen."""

    ast: tuple
    variables: tuple

    def to_poly(self, field, var="x", params=None):
        return _eval_ast(self.ast, field, var, params or {})

    def __str__(self):
        return _print_ast(self.ast)


_TOKEN_CHARS = set("+-*^()/ \t")


def _tokenize(text):
    tokens = []
    i = 0
    n = len(text)
    while i < n:
        c = text[i]
        if c in " \t":
            i += 1
            continue
        if c.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            if j < n and text[j] == ".":
                raise ParseError(f"floating point literal at position {j}", j)
            tokens.append(("int", int(text[i:j]), i))
            i = j
            continue
        if c.isalpha() or c == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(("name", text[i:j], i))
            i = j
            continue
        if c in "+-*^()/":
            tokens.append((c, c, i))
            i += 1
            continue
        raise ParseError(f"unexpected character {c!r} at position {i}", i)
    tokens.append(("end", None, n))
    return tokens


class _Parser:
    def __init__(self, tokens):
        self.tokens = tokens
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def take(self, kind=None):
        tok = self.tokens[self.pos]
        if kind is not None and tok[0] != kind:
            raise ParseError(f"expected {kind!r}, found {tok[1]!r} at position {tok[2]}", tok[2])
        self.pos += 1
        return tok

    def parse_expr(self):
        node = self.parse_term()
        while self.peek()[0] in "+-":
            op = self.take()[0]
            rhs = self.parse_term()
            node = ("add" if op == "+" else "sub", node, rhs)
        return node

    def parse_term(self):
        node = self.parse_factor()
        while self.peek()[0] == "*":
            self.take()
            node = ("mul", node, self.parse_factor())
        return node

    def parse_factor(self):
        if self.peek()[0] == "-":
            self.take()
            return ("neg", self.parse_factor())
        return self.parse_power()

    def parse_power(self):
        base = self.parse_atom()
        if self.peek()[0] == "^":
            self.take()
            tok = self.take("int")
            return ("pow", base, tok[1])
        return base

    def parse_atom(self):
        kind, value, pos = self.peek()
        if kind == "int":
            self.take()
            if self.peek()[0] == "/":
                self.take()
                den = self.take("int")
                if den[1] == 0:
                    raise ParseError(f"zero denominator at position {den[2]}", den[2])
                return ("num", Fraction(value, den[1]))
            return ("num", Fraction(value))
        if kind == "name":
            self.take()
            return ("var", value)
        if kind == "(":
            self.take()
            node = self.parse_expr()
            self.take(")")
            return node
        raise ParseError(f"unexpected {value!r} at position {pos}", pos)


def parse_poly(text):
    """Parse an expression; raises ParseError with the offending position."""
    parser = _Parser(_tokenize(text))
    ast = parser.parse_expr()
    parser.take("end")
    seen = []

    def walk(node):
        if node[0] == "var" and node[1] not in seen:
            seen.append(node[1])
        for child in node[1:]:
            if isinstance(child, tuple):
                walk(child)

    walk(ast)
    return PolyExpr(ast, tuple(seen))


def _eval_ast(node, field, var, params):
    kind = node[0]
    if kind == "num":
        return DensePoly.constant(field, field(node[1]))
    if kind == "var":
        if node[1] == var:
            return DensePoly.x(field)
        if node[1] in params:
            return DensePoly.constant(field, params[node[1]])
        if isinstance(field, FunctionField) and node[1] == field.var:
            return DensePoly.constant(field, field.gen())
        raise ParseError(f"unknown variable {node[1]!r} (declared: {var}, "
                         f"{', '.join(params) or 'none'})")
    if kind == "neg":
        return -_eval_ast(node[1], field, var, params)
    if kind == "add":
        return _eval_ast(node[1], field, var, params) + _eval_ast(node[2], field, var, params)
    if kind == "sub":
        return _eval_ast(node[1], field, var, params) - _eval_ast(node[2], field, var, params)
    if kind == "mul":
        return _eval_ast(node[1], field, var, params) * _eval_ast(node[2], field, var, params)
    if kind == "pow":
        return _eval_ast(node[1], field, var, params) ** node[2]
    raise ParseError(f"malformed AST node {kind!r}")


def _print_ast(node):
    kind = node[0]
    if kind == "num":
        return str(node[1])
    if kind == "var":
        return node[1]
    if kind == "neg":
        return f"-{_wrap(node[1], 'mul')}"
    if kind == "add":
        return f"{_print_ast(node[1])} + {_print_ast(node[2])}"
    if kind == "sub":
        return f"{_print_ast(node[1])} - {_wrap(node[2], 'add')}"
    if kind == "mul":
        return f"{_wrap(node[1], 'add')}*{_wrap(node[2], 'add')}"
    if kind == "pow":
        return f"{_wrap(node[1], 'mul')}^{node[2]}"
    raise ParseError(f"malformed AST node {kind!r}")


def _wrap(node, level):
    s = _print_ast(node)
    needs = {"add": node[0] in ("add", "sub"),
             "mul": node[0] in ("add", "sub", "mul", "neg")}[level]
    return f"({s})" if needs else s


def poly_to_expr_text(poly, var="x"):
    """Canonical printable form accepted back by parse_poly."""
    return format_poly(poly, var)
