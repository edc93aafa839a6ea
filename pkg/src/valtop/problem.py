"""Reader and writer for ``.vt`` problem files.

Example::

    # statements end with ';' or a newline
    vars x y z;
    poly f = 3/2*x^2*y - (y + z)^2;
    ideal I = x^2, x*y, y^3, z;
    valuation v = 2, 3, 7/2;

``vars`` must come first.  Polynomial expressions support ``+ - * ^``,
parentheses, integer or ``p/q`` coefficients and names of earlier polys.
"""

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .errors import ParseError
from .monomial import MonomialIdeal, Polynomial, format_monomial
from .valuation import MonomialValuation

_TOKEN = re.compile(r"""
    (?P<ws>[ \t\r]+)
  | (?P<comment>\#[^\n]*)
  | (?P<newline>\n)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<int>[0-9]+)
  | (?P<op>[-+*/^(),=;])
""", re.VERBOSE)

KEYWORDS = ("vars", "poly", "ideal", "valuation")


@dataclass
class Token:
    kind: str
    text: str
    line: int
    col: int


def tokenize(text: str, line: int = 1, col: int = 1) -> List[Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        chunk = m.group()
        if kind == "newline":
            tokens.append(Token("end", "\n", line, col))
            line, col = line + 1, 1
        else:
            if kind in ("ident", "int", "op"):
                k = "end" if chunk == ";" else kind
                tokens.append(Token(k, chunk, line, col))
            col += len(chunk)
        pos = m.end()
    tokens.append(Token("eof", "", line, col))
    return tokens


@dataclass
class ProblemFile:
    vars: Tuple[str, ...] = ()
    polys: Dict[str, Polynomial] = field(default_factory=dict)
    ideals: Dict[str, MonomialIdeal] = field(default_factory=dict)
    valuations: Dict[str, MonomialValuation] = field(default_factory=dict)

    @property
    def dim(self) -> int:
        return len(self.vars)

    def names(self):
        return set(self.polys) | set(self.ideals) | set(self.valuations)

    def pretty(self) -> str:
        """Canonical text that parses back to an equal ProblemFile."""
        lines = ["vars " + " ".join(self.vars) + ";"]
        for name, f in self.polys.items():
            lines.append(f"poly {name} = {f.format(self.vars)};")
        for name, I in self.ideals.items():
            gens = ", ".join(format_monomial(g, self.vars) for g in I.gens) or "0"
            lines.append(f"ideal {name} = {gens};")
        for name, v in self.valuations.items():
            lines.append(f"valuation {name} = " + ", ".join(str(w) for w in v.weights) + ";")
        return "\n".join(lines) + "\n"


class _Parser:
    def __init__(self, tokens: List[Token], problem: ProblemFile, juxtapose: bool = False):
        self.toks = tokens
        self.i = 0
        self.problem = problem
        self.juxtapose = juxtapose

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def next(self) -> Token:
        t = self.toks[self.i]
        self.i += 1
        return t

    def error(self, msg, tok=None):
        tok = tok or self.tok
        raise ParseError(msg, tok.line, tok.col)

    def expect(self, kind, text=None) -> Token:
        t = self.tok
        if t.kind != kind or (text is not None and t.text != text):
            want = repr(text) if text else kind
            got = repr(t.text) if t.kind != "eof" else "end of input"
            self.error(f"expected {want}, found {got}")
        return self.next()

    def at(self, text) -> bool:
        return self.tok.kind == "op" and self.tok.text == text

    # expressions

    def expr(self) -> Polynomial:
        d = self.problem.dim
        sign = 1
        if self.at("+") or self.at("-"):
            sign = -1 if self.next().text == "-" else 1
        out = self.term() * sign
        while self.at("+") or self.at("-"):
            op = self.next().text
            t = self.term()
            out = out + t if op == "+" else out - t
        return out if isinstance(out, Polynomial) else Polynomial.constant(d, out)

    def term(self) -> Polynomial:
        out = self.factor()
        while self.at("*") or self.at("/"):
            op = self.next()
            if op.text == "*":
                out = out * self.factor()
            else:
                t = self.expect("int")
                if int(t.text) == 0:
                    self.error("division by zero", t)
                out = out * Fraction(1, int(t.text))
        return out

    def factor(self) -> Polynomial:
        base = self.atom()
        if self.at("^"):
            self.next()
            if self.at("-"):
                self.error("negative exponent")
            n = int(self.expect("int").text)
            base = base ** n
        return base

    def atom(self) -> Polynomial:
        d = self.problem.dim
        t = self.tok
        if t.kind == "int":
            self.next()
            return Polynomial.constant(d, int(t.text))
        if t.kind == "ident":
            self.next()
            return self.name(t)
        if self.at("("):
            self.next()
            inner = self.expr()
            self.expect("op", ")")
            return inner
        got = repr(t.text) if t.kind != "eof" else "end of input"
        self.error(f"expected a term, found {got}")

    def name(self, t: Token) -> Polynomial:
        p = self.problem
        if t.text in p.vars:
            return Polynomial.variable(p.dim, p.vars.index(t.text))
        if t.text in p.polys:
            return p.polys[t.text]
        if self.juxtapose:
            split = _split_names(t.text, p.vars)
            if split:
                out = Polynomial.constant(p.dim)
                for v in split:
                    out = out * Polynomial.variable(p.dim, p.vars.index(v))
                return out
        self.error(f"unknown variable or name {t.text!r}", t)

    def rational(self) -> Fraction:
        neg = False
        if self.at("-"):
            self.next()
            neg = True
        num = Fraction(int(self.expect("int").text))
        if self.at("/"):
            self.next()
            t = self.expect("int")
            if int(t.text) == 0:
                self.error("division by zero", t)
            num /= int(t.text)
        return -num if neg else num

    # statements

    def statement(self):
        t = self.tok
        if t.kind != "ident" or t.text not in KEYWORDS:
            self.error(f"expected one of {', '.join(KEYWORDS)}")
        self.next()
        p = self.problem
        if t.text == "vars":
            if p.vars:
                self.error("vars declared twice", t)
            names = []
            while self.tok.kind == "ident":
                n = self.next()
                if n.text in names:
                    self.error(f"duplicate variable {n.text!r}", n)
                if n.text in KEYWORDS:
                    self.error(f"{n.text!r} is reserved", n)
                names.append(n.text)
            if not names:
                self.error("vars needs at least one variable name")
            p.vars = tuple(names)
            return
        if not p.vars:
            self.error("vars must be declared first", t)
        name = self.expect("ident")
        if name.text in p.names() or name.text in p.vars or name.text in KEYWORDS:
            self.error(f"duplicate name {name.text!r}", name)
        self.expect("op", "=")
        if t.text == "poly":
            p.polys[name.text] = self.expr()
        elif t.text == "ideal":
            gens = []
            while True:
                start = self.tok
                g = self.expr()
                if len(g) > 1:
                    self.error("ideal generators must be monomials", start)
                gens.extend(g.terms)
                if not self.at(","):
                    break
                self.next()
            p.ideals[name.text] = MonomialIdeal(p.dim, gens)
        else:
            weights = []
            while True:
                start = self.tok
                w = self.rational()
                if w <= 0:
                    self.error("valuation weights must be positive", start)
                weights.append(w)
                if not self.at(","):
                    break
                self.next()
            if len(weights) != p.dim:
                self.error(f"valuation {name.text!r} has {len(weights)} weights for {p.dim} variables", name)
            p.valuations[name.text] = MonomialValuation(tuple(weights))

    def program(self):
        while self.tok.kind != "eof":
            if self.tok.kind == "end":
                self.next()
                continue
            self.statement()
            if self.tok.kind not in ("end", "eof"):
                self.error(f"expected ';' or newline, found {self.tok.text!r}")


def _split_names(word: str, names) -> Optional[List[str]]:
    """Read ``xy`` as ``x*y`` when the word is a concatenation of variable names."""
    if not word:
        return []
    for n in sorted(names, key=len, reverse=True):
        if word.startswith(n):
            rest = _split_names(word[len(n):], names)
            if rest is not None:
                return [n] + rest
    return None


def parse(text: str) -> ProblemFile:
    problem = ProblemFile()
    _Parser(tokenize(text), problem).program()
    return problem


def parse_expression(text: str, problem: ProblemFile, juxtapose: bool = True) -> Polynomial:
    """Parse an inline polynomial against the variables and polys of a problem.

    With ``juxtapose`` an unknown word made of variable names, such as ``xy``,
    is read as their product.  The word is one atom, so ``xy^2`` is ``(x*y)^2``.
    """
    parser = _Parser(tokenize(text), problem, juxtapose)
    out = parser.expr()
    if parser.tok.kind != "eof":
        parser.error(f"unexpected {parser.tok.text!r}")
    return out
