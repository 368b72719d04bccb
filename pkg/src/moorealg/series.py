"""Truncated one-variable power series over a coefficient ring.

A PowerSeries carries its own truncation: coefficients of t^i are known
for i <= trunc and unknown beyond.  Every operation computes the
tightest truncation its inputs justify, so results never claim more
precision than they have:

* add:      min(Na, Nb)
* mul:      min(Na + ord(b), Nb + ord(a))
* compose:  min((Na+1)*ord(b) - 1, (max(ord(a),1)-1)*ord(b) + Nb)

where ord is the first exponent with a nonzero known coefficient (one
past the truncation for a series that is zero as far as it is known).
A series with trunc = EXACT is a polynomial known completely.

Text grammar (round-trips with format_series):

    series  := ['-'] term (('+'|'-') term)*
    term    := factor ('*' factor)*
    factor  := number | number '/' number | 'v' ['^' int]
             | 't' ['^' nat] | '(' element ')'
    element := ['-'] eterm (('+'|'-') eterm)*   -- no t allowed inside

so "5*t + v*t^2 + 3*t^4", "t - 1/2*t^2", "(5 + v)*t^2" all parse.
"""

from __future__ import annotations

import json
import re

from .errors import (
    CompositionError,
    HeightUndefinedError,
    IncompatibleRingError,
    InternalError,
    NoUniformizerError,
    NotAUnitError,
    NotInvertibleError,
    ParseError,
    PrecisionError,
)
from .rings import CoeffRing, RingElem, format_elem, parse_ring

EXACT = 10 ** 9  # trunc sentinel: all absent coefficients are really zero


class PowerSeries:
    __slots__ = ("ring", "trunc", "coeffs")

    def __init__(self, ring: CoeffRing, coeffs: dict, trunc: int):
        if trunc < 0:
            raise ValueError("truncation must be >= 0")
        self.ring = ring
        self.trunc = trunc
        self.coeffs = {}
        for i, c in coeffs.items():
            if i < 0:
                raise ValueError("negative exponent in power series")
            if i > trunc:
                continue
            if isinstance(c, RingElem):
                if c.ring != ring:
                    raise IncompatibleRingError("coefficient over a different ring")
                if c:
                    self.coeffs[i] = c
            else:
                e = ring.from_int(c) if not isinstance(c, dict) else ring.el(c)
                if e:
                    self.coeffs[i] = e

    # -- basics -----------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, PowerSeries):
            return NotImplemented
        return (
            self.ring == other.ring
            and self.trunc == other.trunc
            and self.coeffs == other.coeffs
        )

    __hash__ = None

    def __repr__(self):
        t = "EXACT" if self.trunc == EXACT else self.trunc
        return f"<{format_series(self)} + O(t^{t}) : {self.ring.spec()}>"

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, i: int) -> RingElem:
        if i > self.trunc:
            raise PrecisionError(f"coefficient {i} is beyond truncation {self.trunc}")
        return self.coeffs.get(i, self.ring.zero())

    def order(self) -> int:
        """First exponent with a nonzero known coefficient.

        For a series that is zero to its truncation this returns
        trunc + 1: the tightest lower bound the data justifies.
        """
        if not self.coeffs:
            return self.trunc + 1
        return min(self.coeffs)

    def degree(self):
        """Largest exponent with a nonzero known coefficient (None if 0)."""
        if not self.coeffs:
            return None
        return max(self.coeffs)

    def truncated(self, n: int) -> "PowerSeries":
        return PowerSeries(self.ring, self.coeffs, min(self.trunc, n))

    def _check(self, other):
        if not isinstance(other, PowerSeries):
            raise TypeError("expected a PowerSeries")
        if other.ring != self.ring:
            raise IncompatibleRingError(
                f"ring mismatch: {self.ring.spec()} vs {other.ring.spec()}"
            )

    # -- ring operations --------------------------------------------------

    def __add__(self, other):
        self._check(other)
        n = min(self.trunc, other.trunc)
        out = dict(self.coeffs)
        for i, c in other.coeffs.items():
            s = out.get(i)
            out[i] = c if s is None else s + c
        return PowerSeries(self.ring, out, n)

    def __neg__(self):
        return PowerSeries(self.ring, {i: -c for i, c in self.coeffs.items()}, self.trunc)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self._check(other)
        n = min(self.trunc + other.order(), other.trunc + self.order())
        out = {}
        for i, a in self.coeffs.items():
            for j, b in other.coeffs.items():
                if i + j > n:
                    continue
                s = out.get(i + j)
                p = a * b
                out[i + j] = p if s is None else s + p
        return PowerSeries(self.ring, out, n)

    def scaled(self, e: RingElem) -> "PowerSeries":
        if e.ring != self.ring:
            raise IncompatibleRingError("scalar over a different ring")
        return PowerSeries(self.ring, {i: c * e for i, c in self.coeffs.items()}, self.trunc)

    def shifted(self, k: int) -> "PowerSeries":
        """Multiply by t^k (exactly)."""
        n = self.trunc if self.trunc == EXACT else self.trunc + k
        return PowerSeries(self.ring, {i + k: c for i, c in self.coeffs.items()}, n)

    def map_coeffs(self, f) -> "PowerSeries":
        return PowerSeries(self.ring, {i: f(c) for i, c in self.coeffs.items()}, self.trunc)


def ps(ring: CoeffRing, coeffs: dict, trunc: int) -> PowerSeries:
    return PowerSeries(ring, coeffs, trunc)


def ps_zero(ring: CoeffRing, trunc: int) -> PowerSeries:
    return PowerSeries(ring, {}, trunc)


def ps_t(ring: CoeffRing, trunc: int) -> PowerSeries:
    return PowerSeries(ring, {1: ring.one()}, trunc)


def ps_arith(a: PowerSeries, b: PowerSeries, op: str) -> PowerSeries:
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown series operation {op!r}")


def compose(f: PowerSeries, g: PowerSeries) -> PowerSeries:
    """Substitute g into f.  Needs g(0) = 0."""
    f._check(g)
    if 0 in g.coeffs:
        raise CompositionError("inner series must have zero constant term")
    og = g.order()  # >= 1
    ofu = max(f.order(), 1)
    n = min((f.trunc + 1) * og - 1, (ofu - 1) * og + g.trunc)
    n = min(n, EXACT)
    if f.trunc == EXACT and g.trunc == EXACT:
        n = EXACT
    out = {}
    if 0 in f.coeffs:
        out[0] = f.coeffs[0]
    # running power of g, truncated to the result bound
    cap = n
    gp = g.truncated(cap) if cap < g.trunc else g
    top = f.degree()
    if top is not None:
        k = 1
        power = gp
        while k <= top and power.order() <= cap:
            c = f.coeffs.get(k)
            if c is not None:
                for i, a in power.coeffs.items():
                    if i > cap:
                        continue
                    s = out.get(i)
                    p = a * c
                    out[i] = p if s is None else s + p
            k += 1
            if k <= top:
                power = power * gp
                power = power.truncated(cap)
    return PowerSeries(f.ring, out, n)


def reversion(f: PowerSeries) -> PowerSeries:
    """Compositional inverse of a unit-linear series."""
    if 0 in f.coeffs:
        raise NotInvertibleError("series has a constant term")
    f1 = f.coeffs.get(1)
    if f1 is None or not f1.is_unit():
        raise NotInvertibleError("linear coefficient is not a unit")
    n = f.trunc
    if n == EXACT:
        raise PrecisionError("reversion needs a finite truncation")
    inv1 = f1.inverse()
    g = PowerSeries(f.ring, {1: inv1}, n)
    for k in range(2, n + 1):
        err = compose(f, g) - ps_t(f.ring, n)
        c = err.coeffs.get(k)
        if c:
            g = g - PowerSeries(f.ring, {k: c * inv1}, n)
    if any(i <= n for i in (compose(f, g) - ps_t(f.ring, n)).coeffs):
        raise InternalError("reversion failed to verify")
    return g


def derivative(f: PowerSeries) -> PowerSeries:
    n = f.trunc if f.trunc == EXACT else max(f.trunc - 1, 0)
    out = {}
    for i, c in f.coeffs.items():
        if i >= 1:
            d = c.scaled(i)
            if d:
                out[i - 1] = d
    return PowerSeries(f.ring, out, n)


def super_derivative(f: PowerSeries) -> PowerSeries:
    """Odd-variable derivative: t^i -> (i mod 2) * t^(i-1).

    This is the coefficient the commutator [g(t) d/dt, -] actually
    produces when t is an odd letter; the alternating Leibniz signs
    cancel in pairs, leaving one term for odd i and none for even i.
    """
    n = f.trunc if f.trunc == EXACT else max(f.trunc - 1, 0)
    out = {}
    for i, c in f.coeffs.items():
        if i % 2 == 1:
            out[i - 1] = c
    return PowerSeries(f.ring, out, n)


def height(f: PowerSeries) -> int:
    """Index of the first nonzero coefficient."""
    if not f.coeffs:
        raise HeightUndefinedError(
            f"no nonzero coefficient up to truncation {f.trunc}"
        )
    return min(f.coeffs)


def is_trivial(f: PowerSeries) -> bool:
    """True iff f is exactly pi * t (valuation-ring modes only)."""
    pi = f.ring.uniformizer()
    return f.coeffs == {1: pi}


def is_canonical(f: PowerSeries):
    """Canonical-shape predicate for valuation-ring series.

    Returns (True, n) when f = pi*t + u_2 t^2 + ... + u_n t^n with every
    middle coefficient divisible by pi, u_n a unit, and nothing beyond
    t^n; (False, None) otherwise.  Disjoint from is_trivial.
    """
    ring = f.ring
    pi = ring.uniformizer()
    if f.coeffs.get(1) != pi:
        return (False, None)
    unit_ix = [i for i in sorted(f.coeffs) if i >= 2 and f.coeffs[i].is_unit()]
    if not unit_ix:
        return (False, None)
    n = unit_ix[0]
    for i in sorted(f.coeffs):
        if i > n:
            return (False, None)
    # coefficients strictly between 1 and n are non-units by choice of n,
    # i.e. divisible by pi; nothing more to check
    return (True, n)


def weierstrass_rank(f: PowerSeries) -> int:
    """Index of the first unit coefficient."""
    top = f.trunc if f.trunc != EXACT else (f.degree() if f.coeffs else 0)
    for i in range(0, top + 1):
        c = f.coeffs.get(i)
        if c is not None and c.is_unit():
            return i
    raise PrecisionError(
        f"no unit coefficient up to truncation {f.trunc}"
    )


# -- text form -------------------------------------------------------------

_TOKEN_RE = re.compile(r"\s*(\d+|[vt()+\-*/^]|$)")


class _Tokens:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.cur = None
        self.cur_pos = 0
        self._advance()

    def _advance(self):
        m = _TOKEN_RE.match(self.text, self.pos)
        if not m:
            raise ParseError("unrecognized character", self.pos)
        self.cur = m.group(1)
        self.cur_pos = m.start(1)
        self.pos = m.end()

    def take(self):
        tok, at = self.cur, self.cur_pos
        self._advance()
        return tok, at

    def expect(self, tok):
        if self.cur != tok:
            raise ParseError(f"expected {tok!r}, found {self.cur!r}", self.cur_pos)
        return self.take()


def _parse_int(tk: _Tokens) -> int:
    sign = 1
    if tk.cur == "-":
        tk.take()
        sign = -1
    if not tk.cur.isdigit():
        raise ParseError(f"expected an integer, found {tk.cur!r}", tk.cur_pos)
    tok, _ = tk.take()
    return sign * int(tok)


def _parse_factor(tk: _Tokens, ring: CoeffRing, allow_t: bool):
    """Returns (coefficient RingElem or None, t-exponent or None)."""
    if tk.cur.isdigit():
        tok, at = tk.take()
        num = int(tok)
        if tk.cur == "/":
            tk.take()
            if not tk.cur.isdigit():
                raise ParseError("expected a denominator", tk.cur_pos)
            den, _ = tk.take()
            d = ring.from_int(int(den))
            if not d.is_unit():
                raise ParseError(f"denominator {den} is not a unit", at)
            return ring.from_int(num) * d.inverse(), None
        return ring.from_int(num), None
    if tk.cur == "v":
        _, at = tk.take()
        if not ring.laurent:
            raise ParseError("variable v is not available in this ring", at)
        e = 1
        if tk.cur == "^":
            tk.take()
            e = _parse_int(tk)
        return ring.vpow(e), None
    if tk.cur == "t":
        _, at = tk.take()
        if not allow_t:
            raise ParseError("t cannot appear inside a coefficient", at)
        e = 1
        if tk.cur == "^":
            tk.take()
            e = _parse_int(tk)
            if e < 0:
                raise ParseError("negative power of t", at)
        return None, e
    if tk.cur == "(":
        _, at = tk.take()
        e = _parse_elem_sum(tk, ring)
        tk.expect(")")
        return e, None
    raise ParseError(f"unexpected token {tk.cur!r}", tk.cur_pos)


def _parse_term(tk: _Tokens, ring: CoeffRing, allow_t: bool):
    """One product of factors: returns (coefficient, t-exponent)."""
    coeff = ring.one()
    texp = None
    while True:
        c, e = _parse_factor(tk, ring, allow_t)
        if e is not None:
            if texp is not None:
                raise ParseError("two powers of t in one term", tk.cur_pos)
            texp = e
        else:
            coeff = coeff * c
        if tk.cur == "*":
            tk.take()
            continue
        break
    return coeff, (texp if texp is not None else 0)


def _parse_sum(tk: _Tokens, ring: CoeffRing, allow_t: bool):
    terms = []
    neg = False
    if tk.cur == "-":
        tk.take()
        neg = True
    while True:
        coeff, texp = _parse_term(tk, ring, allow_t)
        if neg:
            coeff = -coeff
        terms.append((texp, coeff))
        if tk.cur == "+":
            tk.take()
            neg = False
        elif tk.cur == "-":
            tk.take()
            neg = True
        else:
            break
    return terms


def _parse_elem_sum(tk: _Tokens, ring: CoeffRing) -> RingElem:
    acc = ring.zero()
    for texp, coeff in _parse_sum(tk, ring, allow_t=False):
        if texp:
            raise InternalError("t leaked into a coefficient sum")
        acc = acc + coeff
    return acc


def parse_elem(ring: CoeffRing, text: str) -> RingElem:
    tk = _Tokens(text)
    e = _parse_elem_sum(tk, ring)
    if tk.cur != "":
        raise ParseError(f"trailing input {tk.cur!r}", tk.cur_pos)
    return e


def parse_series(ring: CoeffRing, text: str, trunc: int) -> PowerSeries:
    tk = _Tokens(text)
    out = {}
    for texp, coeff in _parse_sum(tk, ring, allow_t=True):
        if texp in out:
            out[texp] = out[texp] + coeff
        else:
            out[texp] = coeff
    if tk.cur != "":
        raise ParseError(f"trailing input {tk.cur!r}", tk.cur_pos)
    return PowerSeries(ring, out, trunc)


def _coeff_text(c: RingElem) -> tuple[bool, str, bool]:
    """(is_negated, positive body, needs_parens) for use in front of t^i."""
    if len(c.terms) > 1:
        return False, format_elem(c), True
    ((_, v),) = c.terms.items()
    neg = v < 0
    body = format_elem(-c if neg else c)
    return neg, body, False


def format_series(f: PowerSeries) -> str:
    if not f.coeffs:
        return "0"
    chunks = []
    for i in sorted(f.coeffs):
        neg, body, parens = _coeff_text(f.coeffs[i])
        if i == 0:
            text = f"({body})" if parens else body
        else:
            tpow = "t" if i == 1 else f"t^{i}"
            if parens:
                text = f"({body})*{tpow}"
            elif body == "1":
                text = tpow
            else:
                text = f"{body}*{tpow}"
        if not chunks:
            chunks.append(("-" if neg else "") + text)
        else:
            chunks.append(("- " if neg else "+ ") + text)
    return " ".join(chunks)


# -- JSON form -------------------------------------------------------------


def series_to_json(f: PowerSeries) -> dict:
    return {
        "ring": f.ring.spec(),
        "trunc": f.trunc,
        "coeffs": {str(i): format_elem(c) for i, c in sorted(f.coeffs.items())},
    }


def series_from_json(data) -> PowerSeries:
    if isinstance(data, str):
        data = json.loads(data)
    ring = parse_ring(data["ring"])
    trunc = int(data["trunc"])
    coeffs = {}
    for k, text in data.get("coeffs", {}).items():
        coeffs[int(k)] = parse_elem(ring, text)
    return PowerSeries(ring, coeffs, trunc)
