"""Classification of two-cell algebra data under normalized substitutions.

The acting group is {f = f1*t + f2*t^2 + ... : f1 a unit} under
composition, and it acts on even classifying series on the right by
u |-> u(f(t)).  Over the (graded) field modes an orbit is pinned by the
height n together with the class of the leading coefficient modulo n-th
powers; over Z/p^K every admissible series reduces to a trivial or
canonical representative, returned here together with a witness
substitution that composes the input to the representative exactly.

The canonical representative adds two normalizations on top of the
shape checked by is_canonical.  First, rescaling t by 1 + c*p^(K-1)
moves the top base-p digit of the leading unit coefficient through all
residues while fixing everything else; that digit is gauged to zero.
Second, at a finite truncation N the substitution coefficients of t^m
for m > N - n + 1 push their unit-size effects beyond t^N, so they can
perturb a canonical shape into nearby ones differing in a block of high
base-p digits slot by slot; a digit sweep clears every such reachable
digit (see _digit_sweep).  After both, equal orbits produce equal forms
coefficient by coefficient, not merely matching shapes.

The odd-variant action is implemented in full (act_full) but no odd
classification is attempted; its outputs are validated against letter
level conjugation in the word-algebra layer.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .errors import (
    FieldRequiredError,
    IncompatibleRingError,
    InternalError,
    NoUniformizerError,
    NotAUnitError,
    NotInvertibleError,
    ParityError,
    PrecisionError,
    StructureError,
    WildCaseError,
)
from .rings import CoeffRing, RingElem
from .series import (
    EXACT,
    PowerSeries,
    compose,
    height,
    is_canonical,
    is_trivial,
    ps_t,
    reversion,
    super_derivative,
)

__all__ = [
    "CanonicalForm",
    "MooreAlgebra",
    "act",
    "act_full",
    "canonicalize_char0",
    "canonicalize_dvr",
    "degree_audit",
    "equivalent",
    "orbit_invariant_char0",
]


class MooreAlgebra:
    """A two-cell algebra datum: one even or one odd classifying package.

    The even kind stores a single series u with zero constant term and an
    even cell degree d; the odd kind stores the pair (v, w), both
    supported on even exponents >= 2, with d odd.  Field names line up
    with what moore_mstar expects, so instances feed the word-level
    layer directly.
    """

    __slots__ = ("kind", "d", "u", "v", "w")

    def __init__(self, kind, d, u=None, v=None, w=None):
        if kind not in ("even", "odd"):
            raise StructureError(f"unknown algebra kind {kind!r}")
        if d % 2 != (0 if kind == "even" else 1):
            raise ParityError(f"{kind}-kind datum needs d of matching parity, got {d}")
        if kind == "even":
            if u is None or v is not None or w is not None:
                raise StructureError("even kind takes exactly the series u")
            if 0 in u.coeffs:
                raise StructureError("classifying series has a nonzero constant term")
        else:
            if v is None or w is None or u is not None:
                raise StructureError("odd kind takes exactly the pair (v, w)")
            if v.ring != w.ring:
                raise IncompatibleRingError("v and w over different rings")
            for name, s in (("v", v), ("w", w)):
                bad = [i for i in s.coeffs if i % 2 or i < 2]
                if bad:
                    raise ParityError(
                        f"{name} must use even exponents >= 2, found t^{min(bad)}"
                    )
        self.kind = kind
        self.d = int(d)
        self.u = u
        self.v = v
        self.w = w

    @classmethod
    def even(cls, u: PowerSeries, d: int = 0) -> "MooreAlgebra":
        return cls("even", d, u=u)

    @classmethod
    def odd(cls, v: PowerSeries, w: PowerSeries, d: int = 1) -> "MooreAlgebra":
        return cls("odd", d, v=v, w=w)

    @property
    def ring(self) -> CoeffRing:
        return self.u.ring if self.kind == "even" else self.v.ring

    def __repr__(self):
        if self.kind == "even":
            return f"MooreAlgebra.even(d={self.d}, u={self.u!r})"
        return f"MooreAlgebra.odd(d={self.d}, v={self.v!r}, w={self.w!r})"


@dataclass
class CanonicalForm:
    """Result of a canonicalization run.

    kind is "trivial", "canonical" (valuation-ring modes) or
    "graded_field"; n is the structural degree (None for trivial);
    form is the reduced series and witness the substitution with
    compose(input, witness) == form to the working truncation.
    """

    kind: str
    n: "int | None"
    form: PowerSeries
    witness: PowerSeries


def _require_substitution(f: PowerSeries) -> RingElem:
    """Check f(0) = 0 with a unit linear slot; return that coefficient."""
    if 0 in f.coeffs:
        raise NotInvertibleError("substitution has a nonzero constant term")
    f1 = f.coeffs.get(1)
    if f1 is None or not f1.is_unit():
        raise NotInvertibleError("substitution needs a unit linear coefficient")
    return f1


def _comp_inverse(f: PowerSeries) -> PowerSeries:
    # linear substitutions invert exactly (EXACT truncation included);
    # anything longer goes through reversion and needs a finite ceiling
    f1 = _require_substitution(f)
    if set(f.coeffs) <= {1}:
        return PowerSeries(f.ring, {1: f1.inverse()}, f.trunc)
    return reversion(f)


def _check_support(s: PowerSeries, par: int, min_exp: int, name: str):
    for i in s.coeffs:
        if i % 2 != par or i < min_exp:
            raise ParityError(f"{name} has a forbidden exponent t^{i}")


# -- the action ------------------------------------------------------------


def act(M: MooreAlgebra, f: PowerSeries) -> MooreAlgebra:
    """Right action on an even datum: substitute f into u."""
    if M.kind != "even":
        raise StructureError("the substitution action is defined on even data")
    if f.ring != M.u.ring:
        raise IncompatibleRingError("substitution over a different ring")
    _require_substitution(f)
    return MooreAlgebra.even(compose(M.u, f), M.d)


def act_full(A: PowerSeries, B: PowerSeries, G: PowerSeries, F: PowerSeries):
    """Full odd-variant action of the pair (G, F) on the pair (A, B).

    A and B are the values-on-letters data (even exponents >= 2); the
    group element sends the suspension letter to itself plus G(t) and
    the cell letter t to F(t), so G and F use odd exponents only and F
    needs a unit linear coefficient.  Returns the transformed (A', B').
    """
    ring = A.ring
    for name, s in (("B", B), ("G", G), ("F", F)):
        if s.ring != ring:
            raise IncompatibleRingError(f"{name} over a different ring")
    _check_support(A, 0, 2, "A")
    _check_support(B, 0, 2, "B")
    _check_support(G, 1, 1, "G")
    _check_support(F, 1, 1, "F")
    Fi = _comp_inverse(F)
    BF = compose(B, F)
    # the derivative that survives conjugating g(t)*d/dt past an odd t
    Ap = compose(A, F) - G * G - BF * compose(super_derivative(compose(G, Fi)), F)
    Bp = G.shifted(1).scaled(ring.from_int(2)) + BF * compose(super_derivative(Fi), F)
    return Ap, Bp


# -- orbit invariants over the field modes ---------------------------------


def _class_rep_q(c: Fraction, n: int) -> Fraction:
    """Smallest positive-exponent representative of c modulo n-th powers."""
    from sympy import factorint

    exps = dict(factorint(abs(c.numerator)))
    for q, k in factorint(c.denominator).items():
        exps[q] = exps.get(q, 0) - k
    rep = Fraction(1)
    for q, k in exps.items():
        if k % n:
            rep *= Fraction(q) ** (k % n)
    if n % 2 == 0 and c < 0:
        rep = -rep
    return rep


def _class_rep_fp(c: int, p: int, n: int) -> int:
    """Representative of c modulo n-th powers in the prime field."""
    d = gcd(n, p - 1)
    if d == 1 or c == 1:
        return 1
    from sympy.ntheory import discrete_log
    from sympy.ntheory.residue_ntheory import primitive_root

    g = primitive_root(p)
    a = discrete_log(p, c, g)
    return pow(g, a % d, p)


def orbit_invariant_char0(M: MooreAlgebra):
    """The pair (height, leading coefficient modulo n-th powers).

    Over the Laurent modes the v-power of the leading coefficient is
    kept as part of the class, since degree-zero rescalings cannot
    change it.  Two even data over the same field are equivalent exactly
    when these pairs match.
    """
    if M.kind != "even":
        raise StructureError("orbit invariants are defined for even data")
    ring = M.u.ring
    if not ring.is_field:
        raise FieldRequiredError(f"{ring.spec()} is not a (graded) field")
    n = height(M.u)
    if ring.mode == "Fp" and n % ring.p == 0:
        raise WildCaseError(
            f"characteristic {ring.p} divides the height {n}; not classified"
        )
    un = M.u.coeffs[n]
    if not un.is_unit():
        raise NotAUnitError("leading coefficient is not a unit monomial")
    ((key, c),) = un.terms.items()
    if ring.mode == "Q":
        rep = _class_rep_q(c, n)
    else:
        rep = _class_rep_fp(c, ring.p, n)
    return n, ring.el({key: rep})


# -- canonical forms -------------------------------------------------------


def canonicalize_char0(u: PowerSeries) -> CanonicalForm:
    """Reduce u to its leading term over a (graded) field.

    Repeatedly kills the lowest coefficient above the height n with the
    substitution t - t^(k-(n-1)) * u_k/(n*u_n); each pass strictly
    raises that index, so the loop clears everything up to the
    truncation.  Returns u_n * t^n with the accumulated witness.
    """
    ring = u.ring
    if not ring.is_field:
        raise FieldRequiredError(f"{ring.spec()} is not a (graded) field")
    if 0 in u.coeffs:
        raise StructureError("classifying series has a nonzero constant term")
    n = height(u)
    if ring.mode == "Fp" and n % ring.p == 0:
        raise WildCaseError(
            f"characteristic {ring.p} divides the height {n}; not classified"
        )
    un = u.coeffs[n]
    if not un.is_unit():
        raise NotAUnitError("leading coefficient is not a unit monomial")
    inv = un.scaled(n).inverse()
    cur = u
    wit = ps_t(ring, u.trunc)
    while True:
        tail = [i for i in cur.coeffs if i > n]
        if not tail:
            break
        if cur.trunc == EXACT:
            raise PrecisionError(
                "reduction of an exact series does not terminate; truncate the input"
            )
        k1 = min(tail)
        h = PowerSeries(
            ring, {1: ring.one(), k1 - (n - 1): -(cur.coeffs[k1] * inv)}, EXACT
        )
        cur = compose(cur, h)
        wit = compose(wit, h)
    return CanonicalForm("graded_field", n, cur, wit)


def _pi_quotient(ring: CoeffRing, e: RingElem) -> RingElem:
    # every residue is divisible by p, so integer division is exact
    return ring.el({k: c // ring.p for k, c in e.terms.items()})


def canonicalize_dvr(u: PowerSeries) -> CanonicalForm:
    """Trivial or canonical representative over Z/p^K, with witness.

    Requires the linear coefficient to be a unit multiple of p.  After
    rescaling that slot to p exactly, either every higher coefficient is
    divisible by p (trivial kind: divide out p and substitute the
    compositional inverse), or the first unit slot k (p must not divide
    k) anchors the double iteration: always remove the surviving tail
    term of least valuation, then lowest exponent.  A final linear
    rescale zeroes the top base-p digit of the leading unit coefficient,
    and a digit sweep clears the truncation slack; see the module
    docstring.
    """
    ring = u.ring
    if ring.mode != "Zp":
        raise NoUniformizerError(f"{ring.spec()} has no uniformizer")
    if 0 in u.coeffs:
        raise StructureError("classifying series has a nonzero constant term")
    if u.trunc < 1:
        raise PrecisionError("truncation too small to see the linear coefficient")
    if is_trivial(u):
        return CanonicalForm("trivial", None, u, ps_t(ring, u.trunc))
    p, K = ring.p, ring.K
    pi = ring.uniformizer()
    u1 = u.coeffs.get(1)
    if u1 is None or u1.valuation() != 1:
        raise StructureError(
            "linear coefficient must be a unit multiple of the uniformizer"
        )
    r = _pi_quotient(ring, u1)
    if not r.is_unit():
        raise NotAUnitError("linear coefficient is not a unit multiple of p")
    cur = u
    wit = ps_t(ring, u.trunc)
    if r != ring.one():
        f0 = PowerSeries(ring, {1: r.inverse()}, EXACT)
        cur = compose(cur, f0)
        wit = compose(wit, f0)
    units = [i for i in sorted(cur.coeffs) if i >= 2 and cur.coeffs[i].valuation() == 0]
    if not units:
        # cur = p * g(t) with g a substitution; g undoes itself exactly
        g = PowerSeries(
            ring,
            {i: _pi_quotient(ring, e) for i, e in cur.coeffs.items()},
            cur.trunc,
        )
        gi = _comp_inverse(g)
        cur = compose(cur, gi)
        wit = compose(wit, gi)
        if cur.coeffs != {1: pi}:
            raise InternalError("trivial reduction failed to verify")
        return CanonicalForm("trivial", None, cur, wit)
    k = units[0]
    if k % p == 0:
        raise WildCaseError(f"residue characteristic {p} divides the degree {k}")
    if not cur.coeffs[k].is_unit():
        raise NotAUnitError(f"coefficient of t^{k} is not a unit monomial")
    cur, wit = _dvr_reduce(cur, wit, k)
    if not ring.laurent:
        cur, wit = _digit_sweep(cur, wit, k)
    ok, n = is_canonical(cur)
    if not ok or n != k:
        raise InternalError("canonical reduction failed to verify")
    return CanonicalForm("canonical", k, cur, wit)


def _dvr_reduce(cur, wit, k):
    # kill everything above the anchor k, then zero the top base-p digit
    # of the leading unit coefficient with a linear rescale
    ring = cur.ring
    p, K = ring.p, ring.K
    while True:
        tail = [i for i in cur.coeffs if i > k]
        if not tail:
            break
        if cur.trunc == EXACT:
            raise PrecisionError(
                "reduction of an exact series does not terminate; truncate the input"
            )
        lv = min(cur.coeffs[i].valuation() for i in tail)
        s1 = min(i for i in tail if cur.coeffs[i].valuation() == lv)
        c = cur.coeffs[s1] * cur.coeffs[k].scaled(k).inverse()
        h = PowerSeries(ring, {1: ring.one(), s1 - (k - 1): -c}, EXACT)
        cur = compose(cur, h)
        wit = compose(wit, h)
    ck = cur.coeffs[k]
    hot = [key for key, c in ck.terms.items() if c % p][0]
    top = ck.terms[hot] // p ** (K - 1)
    if top:
        gamma = (-top * pow(k * (ck.terms[hot] % p), -1, p)) % p
        s = PowerSeries(ring, {1: ring.from_int(1 + gamma * p ** (K - 1))}, EXACT)
        cur = compose(cur, s)
        wit = compose(wit, s)
    return cur, wit


def _digit_sweep(cur, wit, k):
    """Zero every base-p digit of the form that substitutions can reach.

    At truncation N the substitution coefficients of t^m for
    m > N - k + 1 act invisibly on the tail (their unit-size effects all
    land beyond t^N), so distinct runs of the tail reduction can land on
    distinct canonical shapes.  The reachable shapes differ slot by slot
    in a block of high base-p digits.  Scanning digit positions from the
    least significant level and probing the free substitution window for
    a move that clears the current digit without touching any earlier
    one lands every orbit on the same distinguished shape: the one whose
    movable digits all vanish.
    """
    if cur.trunc == EXACT:
        # no truncation, no invisible window, nothing to sweep
        return cur, wit
    ring = cur.ring
    p, K = ring.p, ring.K
    N = cur.trunc
    free = range(max(N - k + 2, 2), N + 1)
    if not free:
        return cur, wit

    def digit(series, i, j):
        e = series.coeffs.get(i)
        return 0 if e is None else (e.terms.get(0, 0) // p**j) % p

    positions = [(j, i) for j in range(1, K) for i in range(2, k + 1)]
    for idx, (j, i) in enumerate(positions):
        if digit(cur, i, j) == 0:
            continue
        prefix = [digit(cur, ii, jj) for jj, ii in positions[:idx]]
        found = None
        for m in free:
            for jm in range(j):
                for d in range(1, p):
                    move = PowerSeries(ring, {1: ring.one(), m: ring.from_int(d * p**jm)}, EXACT)
                    c2 = compose(cur, move)
                    w2 = compose(wit, move)
                    c2, w2 = _dvr_reduce(c2, w2, k)
                    if digit(c2, i, j) != 0:
                        continue
                    if [digit(c2, ii, jj) for jj, ii in positions[:idx]] != prefix:
                        continue
                    found = (c2, w2)
                    break
                if found:
                    break
            if found:
                break
        if found:
            cur, wit = found
    return cur, wit


# -- equivalence and degree bookkeeping ------------------------------------


def equivalent(M1: MooreAlgebra, M2: MooreAlgebra) -> bool:
    """Whether two even data lie in the same substitution orbit."""
    for M in (M1, M2):
        if M.kind != "even":
            raise StructureError("the equivalence test covers even data only")
    if M1.ring != M2.ring:
        raise IncompatibleRingError("data over different rings")
    if M1.d != M2.d:
        return False
    ring = M1.ring
    if ring.is_field:
        z1, z2 = M1.u.is_zero(), M2.u.is_zero()
        if z1 or z2:
            return z1 and z2
        return orbit_invariant_char0(M1) == orbit_invariant_char0(M2)
    if ring.mode == "Zp":
        c1 = canonicalize_dvr(M1.u)
        c2 = canonicalize_dvr(M2.u)
        return (
            c1.kind == c2.kind
            and c1.n == c2.n
            and c1.form.coeffs == c2.form.coeffs
        )
    raise FieldRequiredError("equivalence needs field or valuation-ring coefficients")


def degree_audit(M: MooreAlgebra) -> list:
    """Advisory check of internal v-degrees against the cell degree d.

    In the Laurent modes (|v| = 2) the coefficient of t^i must sit in a
    single degree: i(d+2)-2 for u and w, i(d+2)-d-3 for v.  Returns one
    entry per offending exponent; non-Laurent data audit vacuously.
    """
    ring = M.ring
    if not ring.laurent:
        return []
    report = []

    def check(name, s, want):
        for i in sorted(s.coeffs):
            found = sorted(2 * j for j in s.coeffs[i].terms)
            if any(dg != want(i) for dg in found):
                report.append(
                    {
                        "series": name,
                        "exponent": i,
                        "expected_degree": want(i),
                        "found_degrees": found,
                    }
                )

    d = M.d
    if M.kind == "even":
        check("u", M.u, lambda i: i * (d + 2) - 2)
    else:
        check("v", M.v, lambda i: i * (d + 2) - (d + 3))
        check("w", M.w, lambda i: i * (d + 2) - 2)
    return report
