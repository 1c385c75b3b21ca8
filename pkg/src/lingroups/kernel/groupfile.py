"""The group file format: exact text I/O for generator lists.

A group file is a JSON document with three fields:

  field       {"type": "Q"}
              {"type": "number", "minpoly": "[a0,a1,...,1]"}
              {"type": "ratfunc", "base": "Q" | "Fq", "q": <prime power>,
               "num_vars": m}
  degree      n
  generators  list of generators, each a list of rows, each row a list
              of exact scalar strings

Scalar strings are exact decimal/fraction text: "3/4" over Q,
"[1,0,2]" for coordinates over a number field or finite field, and
polynomial expressions such as "(x+1)/x" or "x1*x2+3" over function
fields.  No binary floats anywhere.
"""

import json
import re
from fractions import Fraction

from .scalars import (QQ, FiniteField, FunctionField, NumberField, Zmod,
                      is_prime)
from .mpoly import parse_int_list
from .matrices import Mat
from .groups import GeneratedGroup
from ..errors import GroupFileError


def field_from_spec(spec):
    kind = spec.get("type")
    if kind == "Q":
        return QQ
    if kind == "number":
        mp = spec.get("minpoly")
        if isinstance(mp, str):
            mp = parse_int_list(mp)
        if not isinstance(mp, list) or len(mp) < 3:
            raise GroupFileError("number field needs a monic integer minpoly")
        return NumberField(mp)
    if kind == "ratfunc":
        base = spec.get("base")
        nvars = int(spec.get("num_vars", 1))
        if base == "Q":
            return FunctionField(QQ, nvars)
        if base == "Fq":
            q = int(spec.get("q", 0))
            return FunctionField(_finite_field(q), nvars)
        raise GroupFileError(f"unknown ratfunc base {base!r}")
    raise GroupFileError(f"unknown field type {kind!r}")


def _finite_field(q):
    if q < 2:
        raise GroupFileError(f"bad field size {q}")
    p, k = _prime_power(q)
    if p is None:
        raise GroupFileError(f"{q} is not a prime power")
    base = Zmod(p)
    if k == 1:
        return base
    from .factor import extension_field
    return extension_field(base, k)


def _prime_power(q):
    for p in range(2, q + 1):
        if q % p == 0:
            if not is_prime(p):
                return None, None
            k = 0
            while q % p == 0:
                q //= p
                k += 1
            return (p, k) if q == 1 else (None, None)
    return None, None


def field_to_spec(dom):
    if dom is QQ or isinstance(dom, type(QQ)):
        return {"type": "Q"}
    if isinstance(dom, NumberField):
        return {"type": "number",
                "minpoly": "[" + ",".join(map(str, dom.minpoly_ints)) + "]"}
    if isinstance(dom, FunctionField):
        if dom.base is QQ or isinstance(dom.base, type(QQ)):
            return {"type": "ratfunc", "base": "Q", "num_vars": dom.nvars}
        return {"type": "ratfunc", "base": "Fq", "q": dom.base.size,
                "num_vars": dom.nvars}
    raise GroupFileError(f"cannot serialize field {dom!r}")


def parse_scalar(dom, text):
    if isinstance(dom, FunctionField):
        return parse_ratfunc(dom, text)
    return dom.parse(text)


def scalar_to_str(dom, value):
    return dom.to_str(value)


# -- expression parser for function fields -------------------------------

_TOKEN = re.compile(r"\s*(\d+|[A-Za-z]\w*|\[[^\]]*\]|\*\*|[-+*/^()])")


def _tokenize(text):
    out, pos = [], 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise GroupFileError(f"bad character in expression {text!r}")
        tok = m.group(1)
        out.append("^" if tok == "**" else tok)
        pos = m.end()
    return out


class _ExprParser:
    """Recursive descent over + - * / ^ ( ) with values in the field."""

    def __init__(self, field, tokens):
        self.field = field
        self.toks = tokens
        self.pos = 0

    def peek(self):
        return self.toks[self.pos] if self.pos < len(self.toks) else None

    def take(self):
        tok = self.peek()
        self.pos += 1
        return tok

    def parse(self):
        v = self.expr()
        if self.peek() is not None:
            raise GroupFileError(f"trailing tokens near {self.peek()!r}")
        return v

    def expr(self):
        v = self.term()
        while self.peek() in ("+", "-"):
            op = self.take()
            w = self.term()
            v = self.field.add(v, w) if op == "+" else self.field.sub(v, w)
        return v

    def term(self):
        v = self.unary()
        while self.peek() in ("*", "/"):
            op = self.take()
            w = self.unary()
            v = self.field.mul(v, w) if op == "*" else self.field.div(v, w)
        return v

    def unary(self):
        if self.peek() == "-":
            self.take()
            return self.field.neg(self.unary())
        if self.peek() == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        v = self.atom()
        if self.peek() == "^":
            self.take()
            sign = 1
            if self.peek() == "-":
                self.take()
                sign = -1
            tok = self.take()
            if tok is None or not tok.isdigit():
                raise GroupFileError("exponent must be an integer")
            v = self.field.pow(v, sign * int(tok))
        return v

    def atom(self):
        tok = self.take()
        if tok is None:
            raise GroupFileError("unexpected end of expression")
        if tok == "(":
            v = self.expr()
            if self.take() != ")":
                raise GroupFileError("missing closing parenthesis")
            return v
        if tok.isdigit():
            return self.field.from_int(int(tok))
        if tok.startswith("["):
            base = self.field.base
            if not hasattr(base, "parse"):
                raise GroupFileError("bracket literal needs a finite base")
            return self.field.from_base(base.parse(tok))
        if re.fullmatch(r"[A-Za-z]\w*", tok):
            return self._variable(tok)
        raise GroupFileError(f"unexpected token {tok!r}")

    def _variable(self, name):
        names = self.field.ring.var_names()
        if name in names:
            return self.field.var(names.index(name) + 1)
        raise GroupFileError(f"unknown variable {name!r}")


def parse_ratfunc(field, text):
    return _ExprParser(field, _tokenize(text)).parse()


# -- whole files ----------------------------------------------------------

def load_payload(payload):
    """Build a GeneratedGroup from a parsed group-file dictionary."""
    try:
        dom = field_from_spec(payload["field"])
        n = int(payload["degree"])
        raw_gens = payload["generators"]
    except (KeyError, TypeError, ValueError) as exc:
        raise GroupFileError(f"malformed group file: {exc}") from exc
    if n < 1:
        raise GroupFileError("degree must be >= 1")
    if not isinstance(raw_gens, list) or not raw_gens:
        raise GroupFileError("at least one generator is required")
    gens = []
    for g in raw_gens:
        if len(g) != n or any(len(r) != n for r in g):
            raise GroupFileError("generator shape does not match degree")
        rows = [[parse_scalar(dom, str(c)) for c in r] for r in g]
        gens.append(Mat(dom, rows))
    return GeneratedGroup(dom, n, gens)


def load_text(text):
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GroupFileError(f"group file is not valid JSON: {exc}") from exc
    return load_payload(payload)


def load_file(path):
    with open(path, "r", encoding="utf-8") as fh:
        return load_text(fh.read())


def group_payload(group):
    dom = group.dom
    return {
        "field": field_to_spec(dom),
        "degree": group.n,
        "generators": [[[scalar_to_str(dom, c) for c in row]
                        for row in g.rows] for g in group.gens],
    }


def dump_text(group):
    return json.dumps(group_payload(group), indent=1, sort_keys=True)


def canonical_payload_text(payload):
    """Stable serialization used for input digests."""
    return json.dumps(payload, sort_keys=True, separators=(",", ":"))


def integer_matrices(group):
    """Convert a group over Q with integral entries to matrices over Z."""
    from .scalars import ZZ

    if group.dom is not QQ and not isinstance(group.dom, type(QQ)):
        raise GroupFileError("lattice commands need a group over Q")
    out = []
    for g in group.gens:
        rows = []
        for row in g.rows:
            ints = []
            for c in row:
                f = Fraction(c)
                if f.denominator != 1:
                    raise GroupFileError(
                        "lattice commands need integer matrix entries")
                ints.append(int(f))
            rows.append(ints)
        out.append(Mat(ZZ, rows))
    return out
