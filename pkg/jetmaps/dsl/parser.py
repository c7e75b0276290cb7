# jetmaps/dsl/parser.py

"""Recursive-descent parser for the expression language.

Precedence, loosest first: binary + and -, then * and /, then unary -,
then ^ (right-associative, rational exponents only).
"""

from fractions import Fraction
from typing import List, Optional

from jetmaps.algebra import expr as ex
from jetmaps.algebra.atoms import Atom, FuncDeriv, Independent, Parameter
from jetmaps.errors import ArityError, DslSyntaxError, UnknownSymbol
from jetmaps.jets.context import JetContext

from .lexer import Token, tokenize

BUILTINS = ("log", "diff")


class ExprParser:
    """Parses one line of text against a jet context."""

    def __init__(self, tokens: List[Token], ctx: JetContext):
        self.tokens = tokens
        self.pos = 0
        self.ctx = ctx

    # Token helpers
    @property
    def current(self) -> Token:
        return self.tokens[self.pos]

    def peek(self, offset: int = 1) -> Token:
        index = min(self.pos + offset, len(self.tokens) - 1)
        return self.tokens[index]

    def at(self, text: str) -> bool:
        return self.current.kind == "op" and self.current.text == text

    def advance(self) -> Token:
        token = self.current
        if token.kind != "end":
            self.pos += 1
        return token

    def expect(self, text: str) -> Token:
        if not self.at(text):
            self.fail(f"expected {text!r}")
        return self.advance()

    def expect_kind(self, kind: str, what: str) -> Token:
        if self.current.kind != kind:
            self.fail(f"expected {what}")
        return self.advance()

    def fail(self, message: str, token: Optional[Token] = None):
        token = token or self.current
        found = "end of input" if token.kind == "end" else repr(token.text)
        raise DslSyntaxError(f"{message}, found {found}", token.line, token.column)

    # Grammar
    def parse(self) -> ex.Expr:
        if self.current.kind == "end":
            self.fail("expected an expression")
        result = self.expression()
        if self.current.kind != "end":
            self.fail("unexpected token")
        return result

    def expression(self) -> ex.Expr:
        result = self.term()
        while self.at("+") or self.at("-"):
            op = self.advance().text
            right = self.term()
            result = result + right if op == "+" else result - right
        return result

    def term(self) -> ex.Expr:
        result = self.factor()
        while self.at("*") or self.at("/"):
            op = self.advance().text
            right = self.factor()
            result = result * right if op == "*" else result / right
        return result

    def factor(self) -> ex.Expr:
        if self.at("-"):
            self.advance()
            return ex.negate(self.factor())
        return self.power()

    def power(self) -> ex.Expr:
        base = self.base()
        if not self.at("^"):
            return base
        self.advance()
        return ex.power(base, self.exponent_chain())

    def exponent_chain(self) -> Fraction:
        exponent = self.exponent()
        if not self.at("^"):
            return exponent
        token = self.advance()
        upper = self.exponent_chain()
        if upper.denominator != 1 or upper < 0:
            self.fail("chained exponents must be non-negative integers", token)
        return exponent ** upper.numerator

    def exponent(self) -> Fraction:
        if self.current.kind == "int":
            return Fraction(int(self.advance().text))
        self.expect("(")
        sign = 1
        if self.at("-"):
            self.advance()
            sign = -1
        numerator = int(self.expect_kind("int", "an integer exponent").text)
        denominator = 1
        if self.at("/"):
            self.advance()
            token = self.expect_kind("int", "an integer denominator")
            denominator = int(token.text)
            if denominator == 0:
                self.fail("zero denominator in exponent", token)
        self.expect(")")
        return sign * Fraction(numerator, denominator)

    def base(self) -> ex.Expr:
        token = self.current
        if token.kind == "int":
            self.advance()
            return ex.Const(int(token.text))
        if self.at("("):
            self.advance()
            inner = self.expression()
            self.expect(")")
            return inner
        if token.kind == "ident":
            return self.identifier()
        self.fail("expected a number, a name or '('")

    def identifier(self) -> ex.Expr:
        token = self.advance()
        name = token.text
        if name == "log" and self.at("("):
            self.advance()
            inner = self.expression()
            self.expect(")")
            return ex.log(inner)
        if name == "diff" and self.at("("):
            return self.diff_call(token)
        if self.at("["):
            return self.jet_atom(token)
        stem = name.rstrip("'")
        if self.at("(") and stem in self.ctx.functions:
            order = len(name) - len(stem)
            return ex.Sym(self.function_call(token, stem, order))
        return ex.Sym(self.resolve(token))

    def function_call(self, token: Token, fname: str, order: int) -> FuncDeriv:
        self.expect("(")
        arg = self.expect_kind("ident", "an independent variable")
        self.expect(")")
        declared = self.ctx.functions[fname]
        if arg.text != declared:
            raise ArityError(
                f"function {fname} takes {declared}, not {arg.text}", arg.line, arg.column
            )
        return FuncDeriv(fname, declared, order)

    def diff_call(self, token: Token) -> ex.Expr:
        self.expect("(")
        fname = self.expect_kind("ident", "a function name")
        if fname.text not in self.ctx.functions:
            raise UnknownSymbol(
                f"unknown function {fname.text!r}", fname.line, fname.column
            )
        self.expect(",")
        arg = self.expect_kind("ident", "an independent variable")
        self.expect(",")
        order = int(self.expect_kind("int", "a derivative order").text)
        self.expect(")")
        declared = self.ctx.functions[fname.text]
        if arg.text != declared:
            raise ArityError(
                f"function {fname.text} takes {declared}, not {arg.text}", arg.line, arg.column
            )
        return ex.Sym(FuncDeriv(fname.text, declared, order))

    def jet_atom(self, token: Token) -> ex.Expr:
        dependent = self.lookup_name(token.text, self.ctx.dependents)
        if dependent is None:
            raise UnknownSymbol(
                f"{token.text!r} is not a dependent variable", token.line, token.column
            )
        self.expect("[")
        alpha = [0] * self.ctx.n
        while True:
            entry = self.expect_kind("ident", "an independent variable")
            name = self.lookup_name(entry.text, self.ctx.independents)
            if name is None:
                raise ArityError(
                    f"{entry.text!r} is not an independent variable", entry.line, entry.column
                )
            alpha[self.ctx.independent_index(name)] += 1
            if self.at(","):
                self.advance()
                continue
            break
        self.expect("]")
        return ex.Sym(self.ctx.jet_by_name(dependent, tuple(alpha)))

    @staticmethod
    def lookup_name(name: str, names) -> Optional[str]:
        if name in names:
            return name
        if name + "'" in names:
            return name + "'"
        return None

    def resolve(self, token: Token) -> Atom:
        name = token.text
        found = self.lookup_name(name, self.ctx.independents)
        if found is not None:
            return Independent(found)
        found = self.lookup_name(name, self.ctx.dependents)
        if found is not None:
            return self.ctx.jet_by_name(found)
        if name in self.ctx.parameters:
            return Parameter(name)
        if name in self.ctx.functions:
            raise ArityError(
                f"function {name} needs its argument, as in {name}({self.ctx.functions[name]})",
                token.line,
                token.column,
            )
        if name in BUILTINS:
            raise ArityError(f"{name} needs an argument list", token.line, token.column)
        raise UnknownSymbol(f"unknown symbol {name!r}", token.line, token.column)


def parse_expr(text: str, ctx: JetContext, line: int = 1, column_offset: int = 0) -> ex.Expr:
    """Parse an expression against ``ctx``.

    Raises:
        DslSyntaxError: malformed text, with the position of the bad token.
        UnknownSymbol: an undeclared name.
        ArityError: a jet bracket listing a non-independent, or a function
            applied to the wrong variable.
    """
    return ExprParser(tokenize(text, line, column_offset), ctx).parse()
