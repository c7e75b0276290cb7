# jetmaps/dsl/problem.py

"""Sectioned problem files.

A problem file is line oriented. ``#`` starts a comment, section headers
are written ``[name]`` and may appear in any order. Raw lines are
collected per section first and interpreted once the [variables]
section is known, so declarations can follow their uses.
"""

import logging
import re
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Dict, List, Optional, Tuple

from jetmaps.algebra import expr as ex
from jetmaps.algebra.atoms import Parameter
from jetmaps.errors import (
    DslSyntaxError,
    DuplicateMapping,
    DuplicateSection,
    JetmapsError,
    MissingSection,
    UnknownSymbol,
)
from jetmaps.jets.context import JetContext
from jetmaps.prolongation.lifting import Mapping

from .parser import parse_expr

logger = logging.getLogger(__name__)

SECTIONS = (
    "variables",
    "functions",
    "system source",
    "system target",
    "mapping",
    "param-mapping",
    "options",
)

OPTION_KEYS = ("order", "trunc", "ranking", "flow_ode", "flow_slope")

_HEADER = re.compile(r"^\s*\[\s*([^\]]*?)\s*\]\s*$")
_FUNCTION = re.compile(r"^\s*([A-Za-z_][A-Za-z0-9_]*)\s*\(\s*([A-Za-z_][A-Za-z0-9_]*)\s*\)\s*$")
_NAME = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*'*$")


@dataclass(frozen=True)
class Line:
    number: int
    text: str  # comment stripped, original columns preserved


@dataclass(frozen=True)
class Equation:
    lhs: ex.Expr
    rhs: ex.Expr
    text: str = ""
    line: int = 0

    @property
    def residual(self) -> ex.Expr:
        return self.lhs - self.rhs


@dataclass(frozen=True)
class ParamMappingDecl:
    """Right-hand sides of a [param-mapping] section.

    Independents and dependents without a line map to themselves. When
    ``h`` is given the dependent is u + 2*D_x(h)/h.
    ``stated_slope`` is an expected value of d ubar/da at a = 0, compared
    against the computed one by the flow ODE check.
    """

    parameter: Parameter
    independents: Dict[str, ex.Expr]
    dependents: Dict[str, ex.Expr]
    h: Optional[ex.Expr] = None
    stated_slope: Optional[ex.Expr] = None


@dataclass
class Problem:
    context: JetContext
    source_system: List[Equation] = field(default_factory=list)
    target_context: Optional[JetContext] = None
    target_system: List[Equation] = field(default_factory=list)
    mapping: Optional[Mapping] = None
    param_mapping: Optional[ParamMappingDecl] = None
    options: Dict[str, str] = field(default_factory=dict)

    @property
    def ansatz_functions(self) -> List[str]:
        return list(self.context.functions)

    @property
    def is_symmetry(self) -> bool:
        return self.mapping is not None and not self.target_system


def _strip_comment(text: str) -> str:
    index = text.find("#")
    return text if index < 0 else text[:index]


def _split_sections(text: str) -> Dict[str, Tuple[int, List[Line]]]:
    sections: Dict[str, Tuple[int, List[Line]]] = {}
    current: Optional[str] = None
    for number, raw in enumerate(text.splitlines(), start=1):
        body = _strip_comment(raw)
        if not body.strip():
            continue
        header = _HEADER.match(body)
        if header:
            name = " ".join(header.group(1).split()).lower()
            column = body.index("[") + 1
            if name not in SECTIONS:
                raise DslSyntaxError(f"unknown section [{name}]", number, column)
            if name in sections:
                raise DuplicateSection(f"section [{name}] given twice", number, column)
            sections[name] = (number, [])
            current = name
            continue
        if current is None:
            column = len(body) - len(body.lstrip()) + 1
            raise DslSyntaxError("text before the first section header", number, column)
        sections[current][1].append(Line(number, body))
    return sections


def _key_value(line: Line, separator: str) -> Tuple[str, str, int]:
    """Split ``key <sep> value``; returns the value's 0-based column too."""
    index = line.text.find(separator)
    if index < 0:
        column = len(line.text) - len(line.text.lstrip()) + 1
        raise DslSyntaxError(f"expected {separator!r}", line.number, column)
    key = line.text[:index].strip()
    if not key:
        raise DslSyntaxError(f"missing name before {separator!r}", line.number, index + 1)
    return key, line.text[index + 1:], index + 1


def _parse_variables(lines: List[Line]) -> Dict[str, List[str]]:
    declared: Dict[str, List[str]] = {}
    aliases = {"independent": "independent", "independents": "independent",
               "dependent": "dependent", "dependents": "dependent",
               "parameter": "parameters", "parameters": "parameters"}
    for line in lines:
        key, value, _ = _key_value(line, ":")
        kind = aliases.get(key.lower())
        if kind is None:
            raise DslSyntaxError(f"unknown declaration {key!r}", line.number, 1 + line.text.index(key))
        names = value.replace(",", " ").split()
        for name in names:
            if not _NAME.match(name) or name.endswith("'"):
                raise DslSyntaxError(
                    f"invalid name {name!r}", line.number, 1 + line.text.index(name)
                )
        declared.setdefault(kind, []).extend(names)
    return declared


def _parse_functions(lines: List[Line]) -> Dict[str, str]:
    functions: Dict[str, str] = {}
    for line in lines:
        for part in _split_commas(line.text):
            match = _FUNCTION.match(part)
            if not match:
                column = len(line.text) - len(line.text.lstrip()) + 1
                raise DslSyntaxError("expected a declaration like f(x)", line.number, column)
            functions[match.group(1)] = match.group(2)
    return functions


def _split_commas(text: str) -> List[str]:
    return [part for part in text.split(",") if part.strip()]


def _parse_equations(lines: List[Line], ctx: JetContext) -> List[Equation]:
    equations = []
    for line in lines:
        lhs_text, rhs_text, rhs_col = _key_value(line, "=")
        lhs = parse_expr(line.text[: rhs_col - 1], ctx, line.number, 0)
        rhs = parse_expr(rhs_text, ctx, line.number, rhs_col)
        equations.append(Equation(lhs, rhs, " ".join(line.text.split()), line.number))
    return equations


def _parse_mapping(header: int, lines: List[Line], ctx: JetContext) -> Mapping:
    expected = ctx.n + ctx.m
    if len(lines) != expected:
        raise DslSyntaxError(
            f"[mapping] needs {ctx.n} independent and {ctx.m} dependent lines, got {len(lines)}",
            header,
            1,
        )
    names = []
    components = []
    for line in lines:
        name, value, column = _key_value(line, "=")
        if not _NAME.match(name):
            raise DslSyntaxError(f"invalid target name {name!r}", line.number, 1 + line.text.index(name))
        if name in names:
            raise DslSyntaxError(f"target name {name!r} given twice", line.number, 1 + line.text.index(name))
        names.append(name)
        components.append(parse_expr(value, ctx, line.number, column))
    target = JetContext(
        independents=tuple(names[: ctx.n]),
        dependents=tuple(names[ctx.n:]),
        parameters=ctx.parameters,
    )
    return Mapping(ctx, target, tuple(components[: ctx.n]), tuple(components[ctx.n:]))


def _parse_param_mapping(header: int, lines: List[Line], ctx: JetContext) -> ParamMappingDecl:
    if not ctx.parameters:
        raise DslSyntaxError("[param-mapping] needs a declared parameter", header, 1)
    independents: Dict[str, ex.Expr] = {}
    dependents: Dict[str, ex.Expr] = {}
    h: Optional[ex.Expr] = None
    for line in lines:
        key, value, column = _key_value(line, "=")
        key_column = 1 + line.text.index(key)
        expr = parse_expr(value, ctx, line.number, column)
        if key == "h":
            h = expr
            continue
        if not key.endswith("bar"):
            raise DslSyntaxError(f"unknown param-mapping key {key!r}", line.number, key_column)
        stem = key[: -len("bar")]
        if stem in ctx.independents:
            target = independents
        elif stem in ctx.dependents:
            target = dependents
        else:
            raise UnknownSymbol(f"{stem!r} is not a declared variable", line.number, key_column)
        if stem in target:
            raise DslSyntaxError(f"{key!r} given twice", line.number, key_column)
        target[stem] = expr
    if h is not None and dependents:
        raise DslSyntaxError("give either h or the dependent series, not both", header, 1)
    if h is not None and (ctx.m != 1 or ctx.n != 2):
        raise DslSyntaxError("h = ... needs two independents and one dependent", header, 1)
    return ParamMappingDecl(Parameter(ctx.parameters[0]), independents, dependents, h)


def _parse_options(lines: List[Line]) -> Dict[str, str]:
    options: Dict[str, str] = {}
    for line in lines:
        key, value, _ = _key_value(line, "=")
        if key not in OPTION_KEYS:
            raise DslSyntaxError(f"unknown option {key!r}", line.number, 1 + line.text.index(key))
        value = value.strip()
        if key in ("order", "trunc") and not value.isdigit():
            raise DslSyntaxError(
                f"option {key} must be a non-negative integer", line.number, 1 + line.text.index(key)
            )
        options[key] = value
    return options


def parse_problem(text: str) -> Problem:
    """Parse a problem file into a fully resolved ``Problem``.

    Raises:
        DslSyntaxError: malformed content, an unknown section or option.
        DuplicateSection: a section header repeated.
        DuplicateMapping: both [mapping] and [param-mapping] present.
        MissingSection: no [variables] section, a target system with no
            mapping to name its coordinates, or a flow_slope option with no
            [param-mapping].
    """
    sections = _split_sections(text)
    if "variables" not in sections:
        raise MissingSection("variables")
    if "mapping" in sections and "param-mapping" in sections:
        raise DuplicateMapping(
            "[mapping] and [param-mapping] are mutually exclusive",
            sections["param-mapping"][0],
            1,
        )
    header, lines = sections["variables"]
    declared = _parse_variables(lines)
    functions = _parse_functions(sections.get("functions", (0, []))[1])
    for kind in ("independent", "dependent"):
        if not declared.get(kind):
            raise DslSyntaxError(f"[variables] declares no {kind} variable", header, 1)
    try:
        ctx = JetContext(
            independents=tuple(declared["independent"]),
            dependents=tuple(declared["dependent"]),
            parameters=tuple(declared.get("parameters", ())),
            functions=functions,
        )
    except JetmapsError as exc:
        raise DslSyntaxError(str(exc), header, 1) from exc

    problem = Problem(context=ctx)
    problem.source_system = _parse_equations(sections.get("system source", (0, []))[1], ctx)
    if "mapping" in sections:
        problem.mapping = _parse_mapping(*sections["mapping"], ctx)
        problem.target_context = problem.mapping.target
    if "system target" in sections:
        if problem.target_context is None:
            raise MissingSection("mapping")
        problem.target_system = _parse_equations(
            sections["system target"][1], problem.target_context
        )
    if "param-mapping" in sections:
        problem.param_mapping = _parse_param_mapping(*sections["param-mapping"], ctx)
    problem.options = _parse_options(sections.get("options", (0, []))[1])
    stated = problem.options.get("flow_slope")
    if stated is not None:
        if problem.param_mapping is None:
            raise MissingSection("param-mapping")
        problem.param_mapping = replace(problem.param_mapping, stated_slope=parse_expr(stated, ctx))
    logger.debug(
        "parsed problem: n=%d m=%d, %d source and %d target equations",
        ctx.n,
        ctx.m,
        len(problem.source_system),
        len(problem.target_system),
    )
    return problem


def read_problem(path) -> Problem:
    return parse_problem(Path(path).read_text(encoding="utf-8"))
