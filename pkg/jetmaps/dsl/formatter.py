# jetmaps/dsl/formatter.py

from fractions import Fraction

from jetmaps.algebra import expr as ex

# Binding strength of the printed form; a child is parenthesized when it
# binds more loosely than its slot requires.
_SUM, _PRODUCT, _UNARY, _POWER, _ATOM = range(5)


def format_expr(e) -> str:
    """Render an expression (or normal form) in the input language."""
    if hasattr(e, "to_expr"):
        e = e.to_expr()
    text, _ = _render(ex.as_expr(e))
    return text


def _format_const(value: Fraction):
    if value.denominator == 1:
        return str(value.numerator), (_ATOM if value >= 0 else _UNARY)
    return f"{value.numerator}/{value.denominator}", (_PRODUCT if value > 0 else _UNARY)


def _format_exponent(exponent: Fraction) -> str:
    if exponent.denominator == 1 and exponent > 0:
        return str(exponent.numerator)
    return f"({exponent.numerator}/{exponent.denominator})" if exponent.denominator != 1 else f"({exponent.numerator})"


def _wrap(node: ex.Expr, minimum: int) -> str:
    text, strength = _render(node)
    return f"({text})" if strength < minimum else text


def _is_negative(node: ex.Expr) -> bool:
    if isinstance(node, ex.Const):
        return node.value < 0
    if isinstance(node, ex.Mul):
        lead = node.factors[0]
        return isinstance(lead, ex.Const) and lead.value < 0
    return False


def _render(node: ex.Expr):
    if isinstance(node, ex.Const):
        return _format_const(node.value)
    if isinstance(node, ex.Sym):
        return str(node.atom), _ATOM
    if isinstance(node, ex.Log):
        return f"log({format_expr(node.arg)})", _ATOM
    if isinstance(node, ex.Pow):
        return f"{_wrap(node.base, _ATOM)}^{_format_exponent(node.exp)}", _POWER
    if isinstance(node, ex.Mul):
        return _render_product(node)
    if isinstance(node, ex.Add):
        parts = [_wrap(node.terms[0], _SUM)]
        for term in node.terms[1:]:
            if _is_negative(term):
                parts.append("-" + _wrap(ex.negate(term), _PRODUCT))
            else:
                parts.append("+" + _wrap(term, _SUM))
        return "".join(parts), _SUM
    raise TypeError(f"unknown expression node {type(node).__name__}")


def _render_product(node: ex.Mul):
    factors = list(node.factors)
    prefix = ""
    lead = factors[0]
    if isinstance(lead, ex.Const):
        if lead.value == -1:
            prefix = "-"
            factors = factors[1:]
        elif lead.value < 0:
            prefix = "-"
            factors[0] = ex.Const(-lead.value)
    parts = []
    for i, factor in enumerate(factors):
        if i == 0 and isinstance(factor, ex.Const):
            text, _ = _format_const(factor.value)
            parts.append(text)
        else:
            parts.append(_wrap(factor, _POWER))
    body = "*".join(parts)
    if prefix:
        return prefix + body, _UNARY
    return body, _PRODUCT
