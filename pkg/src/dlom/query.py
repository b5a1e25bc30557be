"""Conjunctive query language over stored model records.

Surface form: ``SELECT * WHERE { cond ; cond ; ... }`` where each condition
is ``path op literal`` or ``FILTER ( path op literal )``. Keywords are
case-insensitive; conditions all conjoin.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from typing import Sequence, Union

from .errors import DlomError
from . import schema

__all__ = [
    "Condition",
    "Query",
    "QueryError",
    "QuerySyntaxError",
    "UnknownFieldError",
    "TypeMismatchError",
    "parse_query",
    "evaluate",
    "print_query",
]

Literal = Union[str, int, float, bool]

OPERATORS = ("=", "!=", "<", "<=", ">", ">=", "contains")
_ORDERING_OPS = {"<", "<=", ">", ">="}


class QueryError(DlomError):
    pass


class QuerySyntaxError(QueryError):
    def __init__(self, message: str, line: int, column: int):
        self.line = line
        self.column = column
        super().__init__(f"{message} (line {line}, column {column})")


class UnknownFieldError(QueryError):
    def __init__(self, path: str):
        self.path = path
        super().__init__(f"unknown field path {path!r}")


class TypeMismatchError(QueryError):
    def __init__(self, path: str, operator: str, detail: str):
        self.path = path
        self.operator = operator
        super().__init__(f"operator {operator!r} on {path!r}: {detail}")


@dataclass(frozen=True)
class Condition:
    field_path: str
    operator: str
    literal: Literal


@dataclass(frozen=True)
class Query:
    """Parsed query: all-fields projection plus conjunctive conditions."""

    conditions: tuple[Condition, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "conditions", tuple(self.conditions))


_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<string>"(?:[^"\\]|\\.)*")
  | (?P<number>-?\d+(?:\.\d+)?(?:[eE][+-]?\d+)?)
  | (?P<op><=|>=|!=|=|<|>)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<punct>[{}();.*])
    """,
    re.VERBOSE,
)

_KEYWORDS = {"select", "where", "filter"}


@dataclass(frozen=True)
class _Token:
    kind: str  # keyword | string | number | boolean | op | ident | punct | eof
    text: str
    value: Literal
    line: int
    column: int


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    line, column = 1, 1
    pos = 0
    while pos < len(text):
        match = _TOKEN_RE.match(text, pos)
        if match is None:
            raise QuerySyntaxError(f"unexpected character {text[pos]!r}", line, column)
        kind = match.lastgroup
        raw = match.group()
        if kind != "ws":
            if kind == "string":
                token = _Token("string", raw, json.loads(raw), line, column)
            elif kind == "number":
                value = float(raw) if re.search(r"[.eE]", raw) else int(raw)
                token = _Token("number", raw, value, line, column)
            elif kind == "ident" and raw.lower() in _KEYWORDS:
                token = _Token("keyword", raw.lower(), raw.lower(), line, column)
            elif kind == "ident" and raw.lower() in ("true", "false"):
                token = _Token("boolean", raw, raw.lower() == "true", line, column)
            elif kind == "ident" and raw.lower() == "contains":
                token = _Token("op", "contains", "contains", line, column)
            else:
                token = _Token(kind, raw, raw, line, column)
            tokens.append(token)
        newlines = raw.count("\n")
        if newlines:
            line += newlines
            column = len(raw) - raw.rfind("\n")
        else:
            column += len(raw)
        pos = match.end()
    tokens.append(_Token("eof", "", "", line, column))
    return tokens


class _Parser:
    def __init__(self, tokens: list[_Token], field_kinds: dict[str, str]):
        self.tokens = tokens
        self.pos = 0
        self.field_kinds = field_kinds

    @property
    def current(self) -> _Token:
        return self.tokens[self.pos]

    def _fail(self, expected: str):
        token = self.current
        found = token.text if token.kind != "eof" else "end of input"
        raise QuerySyntaxError(
            f"expected {expected}, found {found!r}", token.line, token.column
        )

    def expect(self, kind: str, text: str = None) -> _Token:
        token = self.current
        if token.kind != kind or (text is not None and token.text != text):
            self._fail(text or kind)
        self.pos += 1
        return token

    def parse(self) -> Query:
        self.expect("keyword", "select")
        self.expect("punct", "*")
        self.expect("keyword", "where")
        self.expect("punct", "{")
        conditions = []
        if not (self.current.kind == "punct" and self.current.text == "}"):
            conditions.append(self.condition())
            while self.current.kind == "punct" and self.current.text == ";":
                self.pos += 1
                conditions.append(self.condition())
        self.expect("punct", "}")
        self.expect("eof")
        return Query(tuple(conditions))

    def condition(self) -> Condition:
        if self.current.kind == "keyword" and self.current.text == "filter":
            self.pos += 1
            self.expect("punct", "(")
            condition = self.bare_condition()
            self.expect("punct", ")")
            return condition
        return self.bare_condition()

    def bare_condition(self) -> Condition:
        path = self.path()
        op_token = self.current
        if op_token.kind != "op":
            self._fail("an operator")
        self.pos += 1
        literal_token = self.current
        if literal_token.kind not in ("string", "number", "boolean"):
            self._fail("a literal")
        self.pos += 1
        self._check_types(path, op_token.text, literal_token)
        return Condition(path, op_token.text, literal_token.value)

    def path(self) -> str:
        parts = [self.expect("ident").text]
        self.expect("punct", ".")
        parts.append(self.expect("ident").text)
        while self.current.kind == "punct" and self.current.text == ".":
            self.pos += 1
            parts.append(self.expect("ident").text)
        return ".".join(parts)

    def _check_types(self, path: str, operator: str, literal: _Token):
        kind = self.field_kinds.get(path)
        if kind is None:
            raise UnknownFieldError(path)
        if operator in _ORDERING_OPS:
            if kind != "number":
                raise TypeMismatchError(path, operator, f"requires a numeric field, not {kind}")
            if literal.kind != "number":
                raise TypeMismatchError(path, operator, "requires a numeric literal")
        elif operator == "contains":
            if kind not in ("string", "string_set"):
                raise TypeMismatchError(path, operator, f"requires a string field, not {kind}")
            if literal.kind != "string":
                raise TypeMismatchError(path, operator, "requires a string literal")
        else:  # = / !=
            if kind == "string_set":
                raise TypeMismatchError(path, operator, "set fields only support 'contains'")
            if kind != literal.kind:
                raise TypeMismatchError(
                    path, operator, f"{kind} field compared against {literal.kind} literal"
                )


def parse_query(text: str) -> Query:
    """Parse query text into an AST, validating paths and operator/type use."""
    return _Parser(_tokenize(text), schema.field_paths()).parse()


def _condition_holds(condition: Condition, record: schema.ModelRecord) -> bool:
    value = schema.field_value(record, condition.field_path)
    if value is None:  # absent performance report: no condition on it holds
        return False
    op, literal = condition.operator, condition.literal
    if op == "contains":
        if isinstance(value, frozenset):
            return literal in value
        return literal in value
    if op in _ORDERING_OPS:
        value = float(value)
        literal = float(literal)
        return {
            "<": value < literal,
            "<=": value <= literal,
            ">": value > literal,
            ">=": value >= literal,
        }[op]
    if isinstance(value, bool) or isinstance(literal, bool):
        equal = value is literal
    elif isinstance(value, (int, float)):
        equal = float(value) == float(literal)
    else:
        equal = value == literal
    return equal if op == "=" else not equal


def evaluate(
    query: Query, models: Sequence[schema.ModelRecord]
) -> list[schema.ModelRecord]:
    """Models satisfying every condition, in the input order. Pure."""
    return [m for m in models if all(_condition_holds(c, m) for c in query.conditions)]


def _literal_text(literal: Literal) -> str:
    if isinstance(literal, bool):
        return "true" if literal else "false"
    if isinstance(literal, str):
        return json.dumps(literal)
    return repr(literal)


def print_query(query: Query) -> str:
    """Canonical single-line text; parsing it back yields an equal AST."""
    if not query.conditions:
        return "SELECT * WHERE { }"
    rendered = " ; ".join(
        f"{c.field_path} {c.operator} {_literal_text(c.literal)}"
        for c in query.conditions
    )
    return f"SELECT * WHERE {{ {rendered} }}"
