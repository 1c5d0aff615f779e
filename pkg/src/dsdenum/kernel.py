"""Kernel notation and the plain-text input format.

Input files hold ``length NAME = INT`` declarations and ``NAME = kernel``
complex definitions, with ``#`` comments.  Kernel tokens are whitespace
separated: ``d`` / ``d*`` unpaired, ``d(`` opens a pair closed by the matching
``)`` (which stands for the complement of ``d``), ``+`` separates strands.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .model import Complex, Domain, ModelError, Strand, validate, canonical_form


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line, self.column = line, column
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(where + message)


_TOKEN = re.compile(r"\s*(?:(\+)|(\))|([A-Za-z_][\w.\-]*)(\*?)(\(?))")
_NAME = re.compile(r"^[A-Za-z_][\w.\-]*$")


def tokenize(expr: str):
    """Yield ``(kind, value, column)``; kinds are ``break``, ``close``, ``domain``."""
    pos = 0
    expr = expr.rstrip()
    while pos < len(expr):
        m = _TOKEN.match(expr, pos)
        if m is None or m.end() == pos:
            raise ParseError(f"unexpected character {expr[pos:].strip()[:1]!r}", column=pos + 1)
        col = m.start() + len(m.group(0)) - len(m.group(0).lstrip()) + 1
        if m.group(1):
            yield "break", "+", col
        elif m.group(2):
            yield "close", ")", col
        else:
            yield "domain", (m.group(3), bool(m.group(4)), bool(m.group(5))), col
        pos = m.end()


def parse_kernel(expr: str, domains: dict[str, Domain], name: str | None = None) -> Complex:
    """Parse a kernel string into a canonical complex.

    ``domains`` maps positive-sense names to :class:`Domain`.  Strands are
    named after their domain sequence.
    """
    strands: list[list[Domain]] = [[]]
    opened: list[tuple[tuple[int, int], Domain, int]] = []
    pairs = []
    for kind, value, col in tokenize(expr):
        if kind == "break":
            if not strands[-1]:
                raise ParseError("empty strand", column=col)
            strands.append([])
            continue
        if kind == "close":
            if not opened:
                raise ParseError("unbalanced ')'", column=col)
            start, dom, _ = opened.pop()
            here = (len(strands) - 1, len(strands[-1]))
            strands[-1].append(dom.complement())
            pairs.append((start, here))
            continue
        dname, star, opens = value
        if dname not in domains:
            raise ParseError(f"undeclared domain {dname!r}", column=col)
        dom = domains[dname].complement() if star else domains[dname]
        here = (len(strands) - 1, len(strands[-1]))
        strands[-1].append(dom)
        if opens:
            opened.append((here, dom, col))
    if opened:
        raise ParseError(f"unbalanced '(' opened by {opened[-1][1].label}", column=opened[-1][2])
    if not strands[-1]:
        raise ParseError("empty strand" if len(strands) > 1 else "empty complex")
    strand_objs = [Strand.from_domains(ds) for ds in strands]
    rows = [[None] * len(ds) for ds in strands]
    for a, b in pairs:
        rows[a[0]][a[1]] = b
        rows[b[0]][b[1]] = a
    c = Complex(name, tuple(strand_objs), tuple(tuple(r) for r in rows))
    problem = validate(c)
    if problem is not None:
        raise ParseError(f"invalid complex: {problem}")
    return canonical_form(c)


@dataclass
class InputSpec:
    domains: dict[str, Domain] = field(default_factory=dict)
    complexes: dict[str, Complex] = field(default_factory=dict)
    config: dict = field(default_factory=dict)


_LENGTH = re.compile(r"^length\s+(\S+)\s*=\s*(\S+)\s*$")
_COMPLEX = re.compile(r"^(\S+)\s*=\s*(.*)$")


def parse_input(text: str) -> InputSpec:
    spec = InputSpec()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = _LENGTH.match(line)
        if m:
            dname, value = m.groups()
            if not _NAME.match(dname):
                raise ParseError(f"bad domain name {dname!r}", lineno)
            try:
                length = int(value)
            except ValueError:
                raise ParseError(f"domain length must be an integer, got {value!r}", lineno) from None
            if dname in spec.domains:
                raise ParseError(f"domain {dname!r} declared twice", lineno)
            try:
                spec.domains[dname] = Domain(dname, length)
            except ModelError as e:
                raise ParseError(str(e), lineno) from None
            continue
        m = _COMPLEX.match(line)
        if not m:
            raise ParseError(f"cannot parse {line!r}", lineno)
        cname, expr = m.groups()
        if not _NAME.match(cname):
            raise ParseError(f"bad complex name {cname!r}", lineno)
        if cname in spec.complexes:
            raise ParseError(f"complex {cname!r} defined twice", lineno)
        try:
            c = parse_kernel(expr, spec.domains, name=cname)
        except ParseError as e:
            col = None if e.column is None else e.column + raw.index(expr)
            msg = str(e).split(": ", 1)[-1] if e.column is not None else str(e)
            raise ParseError(msg, lineno, col) from None
        for other in spec.complexes.values():
            if other == c:
                raise ParseError(f"complex {cname!r} is identical to {other.name!r}", lineno)
        spec.complexes[cname] = c
    return spec
