"""Hochschild cohomology of even two-cell algebras.

For an even structure with classifying series u the cohomology is the
quotient of the one-variable series ring by the ordinary derivative
u'(t).  Three routes are implemented: the closed form (hh_closed_form),
a brute-force kernel/image computation on normalized derivations over a
field (hh_bruteforce), and the valuation-ring structure analysis
(hh_structure) that decides between a residue-field algebra and a
finite free quotient cut out by a distinguished polynomial.

Over a field with nonzero linear coefficient the derivative is an
invertible series and the quotient collapses to 0; the interesting
cases live over Z/p^K, where the quotient is either (R/p)[[t]] (when
u' vanishes mod p) or a free R-module presented by the monic factor of
u' with lower coefficients in (p).  The analysis reports both that
computed rank and the height of u mod p; the two disagree in general
and the report keeps both rather than reconciling them.
"""

from __future__ import annotations

from dataclasses import dataclass

from ._linalg import echelon_rank, is_zero_matrix, mat_mul
from .errors import (
    FieldRequiredError,
    InternalError,
    NoUniformizerError,
    NotInvertibleError,
    PrecisionError,
    StructureError,
    ZeroDivisorError,
)
from .rings import CoeffRing
from .series import EXACT, PowerSeries, derivative, format_series, weierstrass_rank

__all__ = [
    "HHReport",
    "hh_bruteforce",
    "hh_closed_form",
    "hh_structure",
    "weierstrass_factor",
]


@dataclass
class HHReport:
    """Outcome of the cohomology analysis for one even structure.

    rank None means infinite (the residue-algebra branch); eisenstein,
    ramification_index, and mod_p_height stay None when they do not
    apply.  discrepancy compares the computed rank against the height
    of u modulo p and is the honest record of the off-by-one between
    the two (see hh_structure).
    """

    ring: CoeffRing
    uprime: PowerSeries
    quotient: str
    rank: int | None
    torsion: str
    ramification_index: int | None = None
    eisenstein: PowerSeries | None = None
    mod_p_height: int | None = None

    @property
    def discrepancy(self) -> bool:
        return (
            self.rank is not None
            and self.mod_p_height is not None
            and self.rank != self.mod_p_height
        )

    def to_json(self) -> dict:
        return {
            "presentation": {
                "ring": self.ring.spec(),
                "uprime": format_series(self.uprime),
                "quotient": self.quotient,
            },
            "rank": "infinity" if self.rank is None else self.rank,
            "torsion": self.torsion,
            "ramification_index": self.ramification_index,
            "eisenstein": None
            if self.eisenstein is None
            else format_series(self.eisenstein),
            "mod_p_height": self.mod_p_height,
            "discrepancy": self.discrepancy,
        }


def _series_inverse(f: PowerSeries) -> PowerSeries:
    # reciprocal 1/f by coefficient recursion; needs a unit constant term
    a0 = f.coeffs.get(0)
    if a0 is None or not a0.is_unit():
        raise NotInvertibleError("reciprocal needs a unit constant term")
    if f.trunc == EXACT and f.coeffs.keys() != {0}:
        raise PrecisionError("reciprocal of an exact series is infinite; truncate")
    b0 = a0.inverse()
    out = {0: b0}
    top = 0 if f.trunc == EXACT else f.trunc
    for i in range(1, top + 1):
        s = None
        for j in range(1, i + 1):
            aj = f.coeffs.get(j)
            bij = out.get(i - j)
            if aj is None or bij is None:
                continue
            s = aj * bij if s is None else s + aj * bij
        if s is not None:
            c = -(b0 * s)
            if c:
                out[i] = c
    return PowerSeries(f.ring, out, f.trunc)


def weierstrass_factor(f: PowerSeries):
    """Monic factor (t^r + lower, lower coefficients in (p)) of f.

    r is the index of the first unit coefficient.  Write f with its
    degree-< r part split off; dividing t^r by f through successive
    approximation (each pass gains one power of p from that low part)
    leaves a remainder rho of degree < r, and t^r - rho is the factor.
    Returns (factor, r).
    """
    ring = f.ring
    if ring.mode != "Zp":
        raise NoUniformizerError(f"{ring.spec()} has no uniformizer")
    r = weierstrass_rank(f)
    if r == 0:
        return PowerSeries(ring, {0: ring.one()}, EXACT), 0
    K = ring.K
    flow = PowerSeries(ring, {i: c for i, c in f.coeffs.items() if i < r}, EXACT)
    htr = (K + 2) * r if f.trunc == EXACT else f.trunc - r
    if htr < r - 1:
        raise PrecisionError("truncation too small for the factor degree")
    fhigh = PowerSeries(
        ring, {i - r: c for i, c in f.coeffs.items() if i >= r}, htr
    )
    fhinv = _series_inverse(fhigh)
    cur = PowerSeries(ring, {r: ring.one()}, htr + r)
    rho: dict = {}
    minus_one = ring.from_int(-1)
    passes = 0
    while cur.coeffs:
        # the shift by r below needs r visible slots to tell a finished
        # division from an invisible tail
        if cur.trunc != EXACT and cur.trunc < r:
            raise PrecisionError("truncation exhausted during division")
        passes += 1
        if passes > K + 2:
            raise InternalError("division failed to contract")
        for i, c in cur.coeffs.items():
            if i < r:
                rho[i] = rho[i] + c if i in rho else c
        ch = PowerSeries(
            ring,
            {i - r: c for i, c in cur.coeffs.items() if i >= r},
            EXACT if cur.trunc == EXACT else cur.trunc - r,
        )
        if not ch.coeffs:
            break
        cur = (ch * fhinv * flow).scaled(minus_one)
    w = {r: ring.one()}
    for i, c in rho.items():
        if c:
            w[i] = -c
    for i, c in w.items():
        if i < r and c.valuation() == 0:
            raise InternalError("computed factor is not distinguished")
    return PowerSeries(ring, w, EXACT), r


def _mod_p_height(u: PowerSeries):
    slots = [i for i in sorted(u.coeffs) if u.coeffs[i].valuation() == 0]
    return slots[0] if slots else None


def hh_closed_form(M) -> HHReport:
    """Cohomology via the quotient by u'(t).

    Needs the linear coefficient nonzero (to working precision in the
    valuation mode).  Over a field that makes u' invertible, so the
    quotient is 0.  Over Z/p^K: u' = 0 mod p gives the residue branch
    (R/p)[[t]] with infinite rank, cross-checked against the criterion
    that every unit slot of u sits at an exponent divisible by p;
    otherwise the quotient is free of rank r presented by the
    distinguished factor of u'.
    """
    if M.kind != "even":
        raise StructureError("cohomology analysis covers even data only")
    u = M.u
    ring = u.ring
    u1 = u.coeffs.get(1)
    if ring.is_field:
        if u1 is None:
            raise ZeroDivisorError("linear coefficient is zero")
        return HHReport(
            ring=ring,
            uprime=derivative(u),
            quotient="0",
            rank=0,
            torsion="not-applicable",
        )
    if ring.mode != "Zp":
        raise FieldRequiredError(
            f"{ring.spec()} is neither a (graded) field nor a valuation ring"
        )
    if u1 is None or u1.valuation() >= ring.K:
        raise ZeroDivisorError("linear coefficient is zero to working precision")
    up = derivative(u)
    up_kills_p = all(c.valuation() >= 1 for c in up.coeffs.values())
    frobenius_shape = all(
        i % ring.p == 0 for i, c in u.coeffs.items() if c.valuation() == 0
    )
    if up_kills_p != frobenius_shape:
        raise InternalError("residue criterion mismatch")
    if up_kills_p:
        return HHReport(
            ring=ring,
            uprime=up,
            quotient="(R/p)[[t]]",
            rank=None,
            torsion="residue-algebra",
            mod_p_height=_mod_p_height(u),
        )
    r = weierstrass_rank(up)
    try:
        W, _ = weierstrass_factor(up)
    except PrecisionError:
        # rank and torsion type survive; only the explicit factor needs the
        # deeper window, so degrade it rather than fail the whole report
        W = None
    mph = _mod_p_height(u) if u1.valuation() >= 1 else None
    if r == 0:
        quotient = "0"
    elif W is not None:
        quotient = f"R[t]/({format_series(W)})"
    else:
        quotient = f"R[t]/(distinguished factor of degree {r})"
    return HHReport(
        ring=ring,
        uprime=up,
        quotient=quotient,
        rank=r,
        torsion="torsion-free",
        ramification_index=r if r >= 1 else None,
        eisenstein=W,
        mod_p_height=mph,
    )


def hh_bruteforce(M, maxdeg: int):
    """Per-degree cohomology dimensions from the derivation complex.

    Normalized derivations in two polynomial coordinates (A, B) of
    t-degree <= maxdeg; the bracket with the structure sends (A, B) to
    (u'*B, 0).  Assembles that matrix exactly, checks it squares to
    zero, and returns the surviving dimension in each t-degree of the
    first coordinate: 1 below the t-order of u', 0 from there on.
    """
    if M.kind != "even":
        raise StructureError("cohomology analysis covers even data only")
    u = M.u
    ring = u.ring
    if not ring.is_field:
        raise FieldRequiredError(f"{ring.spec()} is not a (graded) field")
    if maxdeg < 0:
        raise StructureError("maxdeg must be nonnegative")
    if u.trunc != EXACT and u.trunc < maxdeg + 1:
        raise PrecisionError("truncation too small for the requested degrees")
    up = derivative(u)
    dim = maxdeg + 1
    zero = ring.zero()
    rows = [[zero] * (2 * dim) for _ in range(dim)]
    for i in range(dim):
        img = [zero] * (2 * dim)
        for j, c in up.coeffs.items():
            if j + i <= maxdeg:
                img[j + i] = c
        rows.append(img)
    if not is_zero_matrix(mat_mul(rows, rows, zero)):
        raise InternalError("the differential fails to square to zero")
    dims = []
    for j in range(dim):
        col = [[rows[dim + i][j]] for i in range(dim)]
        dims.append(1 - echelon_rank(col))
    return dims


def hh_structure(M) -> HHReport:
    """Valuation-ring analysis with both indices reported.

    Requires u1 to be a unit multiple of p.  The report's rank is the
    computed one (degree of the distinguished factor of u'); its
    mod_p_height is the first unit slot of u.  For height n prime to p
    the factor has degree n-1, so the two always differ and the
    discrepancy flag on the report is set; the residue branch has no
    finite rank and no flag.
    """
    if M.kind != "even":
        raise StructureError("cohomology analysis covers even data only")
    ring = M.u.ring
    if ring.mode != "Zp":
        raise NoUniformizerError(f"{ring.spec()} has no uniformizer")
    u1 = M.u.coeffs.get(1)
    if u1 is None or u1.valuation() != 1:
        raise StructureError(
            "linear coefficient must be a unit multiple of the uniformizer"
        )
    return hh_closed_form(M)
