"""Text form of polynomial symbols.

Grammar (whitespace is ignored)::

    symbol  := ['+'|'-'] term (('+'|'-') term)*
    term    := coeff ['*' factors] | factors
    factors := factor ('*'? factor)*
    factor  := ('z' | 'w') ['^' integer]
    coeff   := real ['i'] | 'i' | '(' complex ')'
    complex := ['+'|'-'] real ['i'] [('+'|'-') real 'i']

``w`` stands for conj(z), so "z*w" is |z|^2 and "w^2 + 3*w" is
conj(z)^2 + 3 conj(z).
"""

import re
from dataclasses import dataclass

from .hankel import BidegreeSymbol

MAX_EXPONENT = 2**16

_REAL = re.compile(r"(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?")
_INT = re.compile(r"\d+")


class SymbolSyntaxError(ValueError):
    def __init__(self, text, pos, expected):
        self.text, self.pos, self.expected = text, pos, tuple(expected)
        found = repr(text[pos]) if pos < len(text) else "end of input"
        super().__init__(
            f"at position {pos}: expected {' or '.join(self.expected)}, found {found}\n"
            f"  {text}\n  {' ' * pos}^"
        )


class ExponentOverflowError(SymbolSyntaxError):
    def __init__(self, text, pos, value):
        self.text, self.pos, self.expected = text, pos, ()
        ValueError.__init__(self, f"at position {pos}: exponent {value} exceeds {MAX_EXPONENT}")


@dataclass(frozen=True)
class SymbolExpr:
    source: str
    symbol: BidegreeSymbol


class _Parser:
    def __init__(self, text):
        self.text = text
        # Strip whitespace but keep a map back to source positions.
        self.chars = [(i, ch) for i, ch in enumerate(text) if not ch.isspace()]
        self.s = "".join(ch for _, ch in self.chars)
        self.i = 0

    def srcpos(self, i=None):
        i = self.i if i is None else i
        return self.chars[i][0] if i < len(self.chars) else len(self.text)

    def fail(self, *expected):
        raise SymbolSyntaxError(self.text, self.srcpos(), expected)

    def peek(self):
        return self.s[self.i] if self.i < len(self.s) else ""

    def eat(self, ch):
        if self.peek() == ch:
            self.i += 1
            return True
        return False

    def real(self):
        m = _REAL.match(self.s, self.i)
        if not m:
            self.fail("number")
        self.i = m.end()
        return float(m.group(0))

    def parse(self):
        terms = {}
        sign = -1 if self.eat("-") else (self.eat("+") or 1)
        while True:
            c, k, l = self.term()
            terms[(k, l)] = terms.get((k, l), 0) + sign * c
            if self.eat("+"):
                sign = 1
            elif self.eat("-"):
                sign = -1
            elif self.peek() == "":
                break
            else:
                self.fail("'+'", "'-'", "'*'", "end of input")
        return BidegreeSymbol(terms)

    def term(self):
        ch = self.peek()
        if ch in ("z", "w"):
            k, l = self.factors()
            return 1.0, k, l
        c = self.coeff()
        k = l = 0
        if self.eat("*"):
            k, l = self.factors()
        elif self.peek() in ("z", "w"):
            k, l = self.factors()
        return c, k, l

    def coeff(self):
        ch = self.peek()
        if ch == "(":
            self.i += 1
            c = self.complex_body()
            if not self.eat(")"):
                self.fail("')'")
            return c
        if ch == "i":
            self.i += 1
            return 1j
        if ch.isdigit() or ch == ".":
            x = self.real()
            return x * 1j if self.eat("i") else complex(x)
        self.fail("coefficient", "'z'", "'w'")

    def complex_body(self):
        sign = -1.0 if self.eat("-") else (self.eat("+") or 1.0)
        if self.eat("i"):
            return sign * 1j
        x = sign * self.real()
        if self.eat("i"):
            return x * 1j
        if self.peek() in ("+", "-"):
            sign = -1.0 if self.s[self.i] == "-" else 1.0
            self.i += 1
            if self.eat("i"):
                return complex(x, sign)
            y = sign * self.real()
            if not self.eat("i"):
                self.fail("'i'")
            return complex(x, y)
        return complex(x)

    def factors(self):
        k = l = 0
        while True:
            ch = self.peek()
            if ch not in ("z", "w"):
                self.fail("'z'", "'w'")
            self.i += 1
            e = 1
            if self.eat("^"):
                start = self.i
                m = _INT.match(self.s, self.i)
                if not m:
                    self.fail("integer exponent")
                self.i = m.end()
                e = int(m.group(0))
                if e > MAX_EXPONENT:
                    raise ExponentOverflowError(self.text, self.srcpos(start), e)
            if ch == "z":
                k += e
            else:
                l += e
            if k > MAX_EXPONENT or l > MAX_EXPONENT:
                raise ExponentOverflowError(self.text, self.srcpos(), max(k, l))
            if self.eat("*"):
                continue
            if self.peek() not in ("z", "w"):
                return k, l


def parse_symbol(text):
    """Parse a symbol such as ``"w^2 + 3*w"`` into a :class:`SymbolExpr`."""
    if not isinstance(text, str):
        raise TypeError("symbol text must be a string")
    return SymbolExpr(text, _Parser(text).parse())


def _render_coeff(c):
    re_, im = c.real, c.imag
    if im == 0:
        return repr(re_) if re_ >= 0 else f"({re_!r})"
    return f"({re_!r}{'+' if im >= 0 else '-'}{abs(im)!r}i)"


def render(symbol):
    """Text that parses back to exactly ``symbol``."""
    if symbol.is_zero():
        return "0"
    parts = []
    for (k, l), c in symbol.terms.items():
        fac = [f"z^{k}"] * (k > 0) + [f"w^{l}"] * (l > 0)
        parts.append("*".join([_render_coeff(c)] + fac))
    return " + ".join(parts)


def parse_power_series(text):
    """Parse a holomorphic polynomial (only ``z`` factors allowed)."""
    from .spaces import PowerSeries

    sym = parse_symbol(text).symbol
    if sym.degzbar > 0:
        raise ValueError(f"{text!r} is not holomorphic: it contains 'w'")
    return PowerSeries.sparse({k: c for (k, _), c in sym.terms.items()})
