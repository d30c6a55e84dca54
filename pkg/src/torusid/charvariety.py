"""Characters of the one-holed torus and their trace maps.

A character is kappa together with the trace triple (x, y, z) attached to
the base triangle (0/1, inf, 1/1); the triple satisfies the vertex
relation x^2 + y^2 + z^2 - xyz - 2 = kappa, and the trace of every other
slope follows from the edge relation z + z' = xy propagated through the
Farey tree.  The module also provides 2x2 matrix models, half lengths,
the GL(2,Z) mapping-class action, numerically solved fixed characters of
a mapping class, conjugating elements with their complex lengths, and
exact orbit bookkeeping for Anosov classes (fixed points, side splitting,
fundamental-domain representatives, tree axis).

Numeric modes: the default propagates python complex; the exact mode
propagates Gaussian rationals (fractions), which is lossless for any
float input and quantifies drift of the float route.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

import numpy as np

from .complexarith import LogClass, Modulus, acosh_pos, require_finite
from .fareytree import (
    BASE_TRIPLE,
    INF,
    ONE,
    ZERO,
    DirectedEdge,
    FareyTriple,
    Slope,
    canonical_slope,
    det,
    slope_word,
    stern_brocot_triangles,
    third_slopes,
)

BASE_SLOPES = (ZERO, INF, ONE)

VERTEX_TOL = 1e-8


class DegenerateCharacterError(ValueError):
    """No irreducible matrix model exists for the requested data."""


class EllipticTraceError(ValueError):
    """A real trace in [-2, 2] has no loxodromic half length."""


class NotFixedError(ValueError):
    """The character is not fixed by the given mapping class."""


class OrbitOverflowError(RuntimeError):
    """Orbit reduction exceeded its iteration budget."""


def vertex_residual(x: complex, y: complex, z: complex, kappa: complex) -> complex:
    return x * x + y * y + z * z - x * y * z - kappa - 2.0


def propagate_edge(x, y, z):
    """z' with z + z' = xy; an involution in z."""
    return x * y - z


@dataclass(frozen=True)
class QC:
    """Exact Gaussian rational, the value ring of the exact trace mode."""

    re: Fraction
    im: Fraction

    @classmethod
    def from_complex(cls, z: complex) -> "QC":
        return cls(Fraction(z.real), Fraction(z.imag))

    def __add__(self, o: "QC") -> "QC":
        return QC(self.re + o.re, self.im + o.im)

    def __sub__(self, o: "QC") -> "QC":
        return QC(self.re - o.re, self.im - o.im)

    def __mul__(self, o: "QC") -> "QC":
        return QC(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    def to_complex(self) -> complex:
        return complex(float(self.re), float(self.im))

    def abs2(self) -> Fraction:
        return self.re * self.re + self.im * self.im


class Jet:
    """complex value with a gradient, for Newton solves on the variety."""

    __slots__ = ("v", "g")

    def __init__(self, v: complex, g: np.ndarray):
        self.v = complex(v)
        self.g = g

    @classmethod
    def const(cls, v: complex, n: int = 3) -> "Jet":
        return cls(v, np.zeros(n, dtype=complex))

    @classmethod
    def var(cls, v: complex, i: int, n: int = 3) -> "Jet":
        g = np.zeros(n, dtype=complex)
        g[i] = 1.0
        return cls(v, g)

    def __add__(self, o: "Jet") -> "Jet":
        return Jet(self.v + o.v, self.g + o.g)

    def __sub__(self, o: "Jet") -> "Jet":
        return Jet(self.v - o.v, self.g - o.g)

    def __mul__(self, o: "Jet") -> "Jet":
        return Jet(self.v * o.v, self.v * o.g + o.v * self.g)


@dataclass(frozen=True)
class Character:
    """kappa and the base trace triple (x, y, z) at (0/1, inf, 1/1)."""

    kappa: complex
    x: complex
    y: complex
    z: complex

    def __post_init__(self):
        for name in ("kappa", "x", "y", "z"):
            require_finite(getattr(self, name), name)
        r = abs(self.residual())
        if r > VERTEX_TOL:
            raise ValueError(f"vertex relation violated: residual {r:.3e}")

    def residual(self) -> complex:
        return vertex_residual(self.x, self.y, self.z, self.kappa)

    @property
    def base(self) -> tuple[complex, complex, complex]:
        return (self.x, self.y, self.z)

    @classmethod
    def from_triple(cls, x: complex, y: complex, z: complex) -> "Character":
        """Character with kappa derived from the vertex relation."""
        kappa = x * x + y * y + z * z - x * y * z - 2.0
        return cls(kappa, x, y, z)


def _walk_values(values: dict, s: Slope):
    """Propagate the dict {slope: value} (seeded on the base triangle)
    along the unique tree path until it covers s; returns values[s].

    Works over any ring with +, -, *.
    """
    if s in values:
        return values[s]
    tri = list(BASE_TRIPLE.slopes)
    while s not in tri:
        for i in range(3):
            w = tri[i]
            u, v = (t for j, t in enumerate(tri) if j != i)
            # cross (u, v) iff s lies strictly on the far side from w
            if det(u, s) * det(v, s) * det(u, w) * det(v, w) < 0:
                w1, w2 = third_slopes(u, v)
                w_new = w2 if w1 == w else w1
                if w_new not in values:
                    values[w_new] = propagate_edge(values[u], values[v], values[w])
                tri = [u, v, w_new]
                break
        else:  # pragma: no cover - impossible for a valid slope
            raise RuntimeError(f"farey walk stuck at {tri} targeting {s}")
    return values[s]


class TraceMap:
    """Memoised trace map slope -> tr(rho) of a character.

    Concurrent readers are safe; duplicate fills recompute the same value
    from the same base triple, so fills are idempotent.
    """

    def __init__(self, character: Character, exact: bool = False):
        self.character = character
        self.exact = exact
        x, y, z = character.base
        if exact:
            seed = tuple(QC.from_complex(v) for v in (x, y, z))
        else:
            seed = (complex(x), complex(y), complex(z))
        self._values = {ZERO: seed[0], INF: seed[1], ONE: seed[2]}
        self._values[canonical_slope(-1, 1)] = propagate_edge(seed[0], seed[1], seed[2])

    def value(self, s: Slope):
        """Ring value at s (complex, or QC in exact mode)."""
        return _walk_values(self._values, s)

    def trace_of(self, s: Slope) -> complex:
        v = self.value(s)
        return v.to_complex() if self.exact else v

    def preload(self, entries: dict[Slope, complex]) -> None:
        """Seed memo entries (e.g. from a cache); exact mode ignores them."""
        if self.exact:
            return
        for s, v in entries.items():
            self._values.setdefault(s, complex(v))

    def known(self) -> dict[Slope, complex]:
        if self.exact:
            return {s: v.to_complex() for s, v in self._values.items()}
        return dict(self._values)

    def values_up_to(self, max_size: int) -> list[tuple[Slope, complex]]:
        """(slope, trace) for all slopes of size <= max_size in canonical
        enumeration order."""
        buckets: list[list[tuple[Slope, complex]]] = [[] for _ in range(max_size + 1)]
        if max_size >= 1:
            buckets[1].append((ZERO, self.trace_of(ZERO)))
            buckets[1].append((INF, self.trace_of(INF)))
        vals = dict(self._values)
        for a, b, m, o in stern_brocot_triangles(max_size):
            if m not in vals:
                vals[m] = propagate_edge(vals[a], vals[b], vals[o])
            v = vals[m]
            buckets[m.size].append((m, v.to_complex() if self.exact else v))
        out: list[tuple[Slope, complex]] = []
        for bucket in buckets:
            out.extend(bucket)
        return out

    def edge_values(self, e: DirectedEdge) -> tuple[complex, complex, complex, complex]:
        """(x, y, value at e.frm, value at e.to)."""
        return (
            self.trace_of(e.x),
            self.trace_of(e.y),
            self.trace_of(e.frm),
            self.trace_of(e.to),
        )


@dataclass
class MatrixRep:
    """A pair of unit-determinant 2x2 complex matrices (rho(X), rho(Y))."""

    ax: np.ndarray
    ay: np.ndarray

    def __post_init__(self):
        self.ax = np.asarray(self.ax, dtype=complex).reshape(2, 2)
        self.ay = np.asarray(self.ay, dtype=complex).reshape(2, 2)
        for name, m in (("ax", self.ax), ("ay", self.ay)):
            d = np.linalg.det(m)
            if abs(d - 1.0) > 1e-12:
                raise ValueError(f"det({name}) = {d}, expected 1")

    @property
    def traces(self) -> tuple[complex, complex, complex]:
        return (
            complex(np.trace(self.ax)),
            complex(np.trace(self.ay)),
            complex(np.trace(self.ax @ self.ay)),
        )


def _inv2(m: np.ndarray) -> np.ndarray:
    # determinant-1 inverse
    return np.array([[m[1, 1], -m[0, 1]], [-m[1, 0], m[0, 0]]], dtype=complex)


def matrix_of_word(tokens: Sequence[int], rep: MatrixRep) -> np.ndarray:
    """Product over tokens +-1 -> rho(X)^{+-1}, +-2 -> rho(Y)^{+-1}."""
    table = {
        1: rep.ax,
        -1: _inv2(rep.ax),
        2: rep.ay,
        -2: _inv2(rep.ay),
    }
    out = np.eye(2, dtype=complex)
    for t in tokens:
        out = out @ table[t]
    return out


def character_from_matrices(rep: MatrixRep) -> Character:
    """(tr X, tr Y, tr XY) and kappa = tr[X, Y] of a matrix pair."""
    x, y, z = rep.traces
    comm = rep.ax @ rep.ay @ _inv2(rep.ax) @ _inv2(rep.ay)
    kappa = complex(np.trace(comm))
    c = Character(kappa, x, y, z)
    if abs(c.residual()) > 1e-10:
        raise ValueError(f"Fricke residual too large: {abs(c.residual()):.3e}")
    return c


def matrices_from_character(c: Character) -> MatrixRep:
    """Standard model Ax = [[x, 1], [-1, 0]], Ay = [[y, s], [-1/s, 0]]
    with s the larger root of s^2 - (xy - z)s + 1 = 0 (ties broken toward
    nonnegative imaginary part)."""
    x, y, z = c.base
    t = x * y - z
    disc = cmath.sqrt(t * t - 4.0)
    s1 = (t + disc) / 2.0
    s2 = (t - disc) / 2.0
    roots = sorted((s1, s2), key=lambda s: (abs(s), s.imag, s.real), reverse=True)
    s = roots[0]
    if abs(s) < 1e-14 or not cmath.isfinite(s):
        raise DegenerateCharacterError(f"no usable root for s, got {s!r}")
    ax = np.array([[x, 1.0], [-1.0, 0.0]], dtype=complex)
    ay = np.array([[y, s], [-1.0 / s, 0.0]], dtype=complex)
    rep = MatrixRep(ax, ay)
    got = rep.traces
    for want, have in zip((x, y, z), got):
        if abs(want - have) > 1e-10 * max(1.0, abs(want)):
            raise DegenerateCharacterError(
                f"trace round-trip failed: wanted {(x, y, z)}, got {got}"
            )
    return rep


@dataclass(frozen=True)
class HalfLength:
    """Specific half length: cosh(value) = -trace/2, Re(value) > 0."""

    value: complex

    def __post_init__(self):
        if self.value.real <= 0:
            raise ValueError("half length must have positive real part")


def half_length(trace: complex) -> HalfLength:
    """Half length of a loxodromic trace; real traces in [-2, 2] are
    elliptic or parabolic and rejected."""
    trace = require_finite(trace, "trace")
    if trace.imag == 0.0 and -2.0 <= trace.real <= 2.0:
        raise EllipticTraceError(f"trace {trace.real} lies in [-2, 2]")
    return HalfLength(acosh_pos(-trace / 2.0))


_R = ((1, 1), (0, 1))
_L = ((1, 0), (1, 1))
_RINV = ((1, -1), (0, 1))
_LINV = ((1, 0), (-1, 1))

_LETTER_MATS = {"R": _R, "L": _L, "r": _RINV, "l": _LINV}

# Free-group lifts of the letters: token substitution tables over
# +-1 = X^{+-1}, +-2 = Y^{+-1}.  R lifts to X -> XY, L lifts to Y -> YX.
_LETTER_LIFTS = {
    "R": {1: (1, 2), -1: (-2, -1), 2: (2,), -2: (-2,)},
    "r": {1: (1, -2), -1: (2, -1), 2: (2,), -2: (-2,)},
    "L": {2: (2, 1), -2: (-1, -2), 1: (1,), -1: (-1,)},
    "l": {2: (2, -1), -2: (1, -2), 1: (1,), -1: (-1,)},
}


def _mat_mul(a, b):
    return (
        (a[0][0] * b[0][0] + a[0][1] * b[1][0], a[0][0] * b[0][1] + a[0][1] * b[1][1]),
        (a[1][0] * b[0][0] + a[1][1] * b[1][0], a[1][0] * b[0][1] + a[1][1] * b[1][1]),
    )


@dataclass(frozen=True)
class MCGElement:
    """A mapping class, given as a word over R, L and their inverses r, l.

    R acts on slopes as [[1,1],[0,1]] and L as [[1,0],[1,1]]; the letter
    matrices multiply in word order.  The empty word is the identity.
    """

    word: str = ""

    def __post_init__(self):
        bad = set(self.word) - set("RLrl")
        if bad:
            raise ValueError(f"invalid letters in mapping-class word: {bad}")

    @property
    def matrix(self) -> tuple[tuple[int, int], tuple[int, int]]:
        m = ((1, 0), (0, 1))
        for ch in self.word:
            m = _mat_mul(m, _LETTER_MATS[ch])
        return m

    @property
    def trace(self) -> int:
        m = self.matrix
        return m[0][0] + m[1][1]

    def is_identity_matrix(self) -> bool:
        return self.matrix == ((1, 0), (0, 1))

    def is_anosov(self) -> bool:
        return abs(self.trace) > 2

    def inverse(self) -> "MCGElement":
        return MCGElement(self.word[::-1].swapcase())

    def __mul__(self, other: "MCGElement") -> "MCGElement":
        return MCGElement(self.word + other.word)

    def lift_images(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        """Images of (X, Y) under the pinned free-group lift, as tokens.

        The lift of every letter fixes the commutator XYX^{-1}Y^{-1}
        exactly, so the conjugating element of a fixed character always
        centralises the peripheral holonomy.
        """
        wx: tuple[int, ...] = (1,)
        wy: tuple[int, ...] = (2,)
        for ch in reversed(self.word):
            table = _LETTER_LIFTS[ch]
            wx = tuple(t for tok in wx for t in table[tok])
            wy = tuple(t for tok in wy for t in table[tok])
        return wx, wy


IDENTITY_MCG = MCGElement("")


def mcg_act_on_slope(theta: MCGElement, s: Slope) -> Slope:
    (a, b), (c, d) = theta.matrix
    return canonical_slope(a * s.p + b * s.q, c * s.p + d * s.q)


def mcg_act_on_character(theta: MCGElement, c: Character) -> Character:
    """theta . c, with base triple (phi(theta^{-1} 0/1), phi(theta^{-1} inf),
    phi(theta^{-1} 1/1)); kappa is untouched."""
    inv = theta.inverse()
    tm = TraceMap(c)
    nx, ny, nz = (tm.trace_of(mcg_act_on_slope(inv, s)) for s in BASE_SLOPES)
    return Character(c.kappa, nx, ny, nz)


def is_fixed_character(theta: MCGElement, c: Character, tol: float = 1e-8) -> bool:
    moved = mcg_act_on_character(theta, c)
    return max(abs(a - b) for a, b in zip(moved.base, c.base)) < tol


# Newton solver knobs: empirically exhaustive at desk scale for the
# low-degree fixed-point varieties met here.
NEWTON_SEEDS = 200
NEWTON_ITERS = 50
NEWTON_TOL = 1e-12
COALESCE_RADIUS = 1e-6
SEED_BOX = 5.0
_NEWTON_RNG_SEED = 20240901


def _act_base_jets(inv_slopes, v: np.ndarray) -> list[Jet]:
    jets = {
        ZERO: Jet.var(v[0], 0),
        INF: Jet.var(v[1], 1),
        ONE: Jet.var(v[2], 2),
    }
    jets[canonical_slope(-1, 1)] = propagate_edge(jets[ZERO], jets[INF], jets[ONE])
    return [_walk_values(dict(jets), s) for s in inv_slopes]


def fixed_characters_of(
    theta: MCGElement, kappa: complex, seeds: int = NEWTON_SEEDS
) -> list[Character]:
    """Characters with theta . c = c and the given kappa, found by Newton
    iteration from random seeds; duplicates are coalesced.  An empty list
    means no seed converged."""
    kappa = require_finite(kappa, "kappa")
    inv = theta.inverse()
    inv_slopes = tuple(mcg_act_on_slope(inv, s) for s in BASE_SLOPES)
    rng = np.random.default_rng(_NEWTON_RNG_SEED)
    found: list[tuple[complex, complex, complex]] = []
    for _ in range(max(1, seeds)):
        v = rng.uniform(-SEED_BOX, SEED_BOX, 3) + 1j * rng.uniform(-SEED_BOX, SEED_BOX, 3)
        ok = False
        for _ in range(NEWTON_ITERS):
            acts = _act_base_jets(inv_slopes, v)
            jx, jy, jz = Jet.var(v[0], 0), Jet.var(v[1], 1), Jet.var(v[2], 2)
            vert = jx * jx + jy * jy + jz * jz - jx * jy * jz
            F = np.array(
                [acts[i].v - v[i] for i in range(3)] + [vert.v - kappa - 2.0],
                dtype=complex,
            )
            if np.max(np.abs(F)) < NEWTON_TOL:
                ok = True
                break
            J = np.zeros((4, 3), dtype=complex)
            for i in range(3):
                J[i] = acts[i].g
                J[i, i] -= 1.0
            J[3] = vert.g
            step, *_ = np.linalg.lstsq(J, -F, rcond=None)
            if not np.all(np.isfinite(step)):
                break
            v = v + step
        if not ok:
            continue
        cand = (complex(v[0]), complex(v[1]), complex(v[2]))
        if any(max(abs(a - b) for a, b in zip(cand, f)) < COALESCE_RADIUS for f in found):
            continue
        found.append(cand)
    found.sort(key=lambda t: (t[0].real, t[0].imag, t[1].real, t[1].imag, t[2].real, t[2].imag))
    out = []
    for x, y, z in found:
        c = Character(kappa, x, y, z)
        if is_fixed_character(theta, c, tol=1e-9) and abs(c.residual()) < 1e-9:
            out.append(c)
    return out


def conjugator_for(theta: MCGElement, rep: MatrixRep) -> tuple[np.ndarray, LogClass]:
    """The matrix A with A rho(theta~(w)) A^{-1} ... = rho(w) on generators,
    for the pinned lift theta~; returns (A, l(A) mod 2 pi i).

    Raises NotFixedError if the conjugation system is inconsistent and
    DegenerateCharacterError if it is rank-deficient (reducible input).
    """
    wx, wy = theta.lift_images()
    mx, my = rep.ax, rep.ay
    mx_im = matrix_of_word(wx, rep)
    my_im = matrix_of_word(wy, rep)
    rows = []
    for m_im, n in ((mx_im, mx), (my_im, my)):
        # A @ m_im - n @ A = 0, unknowns A[r, s] flattened as 2r + s
        for i in range(2):
            for j in range(2):
                row = np.zeros(4, dtype=complex)
                for k in range(2):
                    row[2 * i + k] += m_im[k, j]
                    row[2 * k + j] -= n[i, k]
                rows.append(row)
    K = np.array(rows)
    _, sig, vh = np.linalg.svd(K)
    scale = sig[0] if sig[0] > 0 else 1.0
    if sig[3] > 1e-8 * scale:
        raise NotFixedError(
            f"conjugation system inconsistent (smallest singular value {sig[3]:.3e})"
        )
    if sig[2] < 1e-8 * scale:
        raise DegenerateCharacterError("conjugation system rank-deficient (reducible)")
    A = vh[3].conj().reshape(2, 2)
    d = A[0, 0] * A[1, 1] - A[0, 1] * A[1, 0]
    if abs(d) < 1e-20:
        raise DegenerateCharacterError("conjugator has vanishing determinant")
    A = A / cmath.sqrt(d)
    resid = max(
        float(np.max(np.abs(A @ mx_im - mx @ A))),
        float(np.max(np.abs(A @ my_im - my @ A))),
    )
    if resid > 1e-8 * max(1.0, float(np.max(np.abs(mx))), float(np.max(np.abs(my)))):
        raise NotFixedError(f"conjugation residual {resid:.3e}")
    tr = complex(np.trace(A))
    l_a = LogClass(2.0 * acosh_pos(-tr / 2.0), Modulus.TWO_PI_I)
    return A, l_a


def pants_holonomy(t1: float, t2: float, t3: float) -> tuple[MatrixRep, Character]:
    """Holonomy of a hyperbolic pair of pants with boundary traces
    (t1, t2, t3), each real and strictly below -2; the commutator trace
    then exceeds 18 strictly."""
    ts = []
    for t in (t1, t2, t3):
        t = complex(t)
        if t.imag != 0.0 or t.real >= -2.0:
            raise ValueError(
                f"boundary trace {t} is not the trace of a hyperbolic boundary "
                "(need real, strictly < -2)"
            )
        ts.append(t.real)
    c = Character.from_triple(*ts)
    return matrices_from_character(c), c


def word_length_of_slope(s: Slope) -> int:
    """Cyclically reduced word length of the class of s: |p| + q."""
    return s.size


def trace_of_word(rep: MatrixRep, s: Slope) -> complex:
    """Trace of the matrix spelled by the standard word of s; an oracle
    route independent of edge-relation propagation."""
    return complex(np.trace(matrix_of_word(slope_word(s), rep)))


class AnosovFrame:
    """Exact fixed-point data of an Anosov mapping class.

    The fixed points are the roots of c t^2 + (d - a) t - b; slopes split
    into the interior side (between the roots on the real line) and the
    exterior side (the arc through inf).  Each side carries a canonical
    fundamental window for the theta action, giving exact orbit
    representatives.
    """

    MAX_REDUCE = 100_000

    def __init__(self, theta: MCGElement):
        (a, b), (c, d) = theta.matrix
        if a * d - b * c != 1 or abs(a + d) <= 2:
            raise ValueError("mapping class is not Anosov (need det 1, |trace| > 2)")
        self.theta = theta
        self.theta_inv = theta.inverse()
        self._qa, self._qb, self._qc = c, d - a, -b  # c t^2 + (d-a) t - b
        self.disc = (a + d) ** 2 - 4
        # interior rational reference point, verified exactly
        lo = (a - d - math.isqrt(self.disc) - 1) // (2 * c) if c > 0 else None
        mid = ((a - d) - 0.0) / (2.0 * c)  # vertex of the parabola lies between roots
        self.r_inner = self._find_inner(Fraction(mid).limit_denominator(10**6))
        del lo

    def _f_sign(self, s: Slope) -> int:
        v = self._qa * s.p * s.p + self._qb * s.p * s.q + self._qc * s.q * s.q
        if v == 0:  # roots are irrational, so only possible for bugs
            raise ArithmeticError(f"slope {s} claims to be a fixed point")
        return 1 if v > 0 else -1

    def _frac_interior(self, r: Fraction) -> bool:
        v = self._qa * r.numerator**2 + self._qb * r.numerator * r.denominator + self._qc * r.denominator**2
        return (v > 0) != (self._qa > 0)

    def _find_inner(self, guess: Fraction) -> Fraction:
        if self._frac_interior(guess):
            return guess
        for scale in (10**9, 10**12, 10**15):
            cand = guess.limit_denominator(scale)
            if self._frac_interior(cand):
                return cand
        raise ArithmeticError("could not locate a rational between the fixed points")

    def side(self, s: Slope) -> str:
        """'interior' (between the fixed points) or 'exterior'."""
        return "exterior" if self._f_sign(s) == (1 if self._qa > 0 else -1) else "interior"

    def _coord(self, s: Slope) -> Fraction:
        """Order coordinate on the exterior arc: -1/(t - r_inner), inf -> 0."""
        if s.is_infinity:
            return Fraction(0)
        return -1 / (s.as_fraction() - self.r_inner)

    def apply(self, s: Slope, n: int = 1) -> Slope:
        th = self.theta if n >= 0 else self.theta_inv
        for _ in range(abs(n)):
            s = mcg_act_on_slope(th, s)
        return s

    def orbit_rep(self, s: Slope) -> Slope:
        """Canonical representative of the <theta>-orbit of s."""
        if self.side(s) == "interior":
            val = lambda t: t.as_fraction()
            w0 = self.r_inner
            # w0 itself may not be a slope of interest; window anchored at
            # the first interior slope: use the fraction directly.
            t0 = w0
            t1_slope = mcg_act_on_slope(
                self.theta, canonical_slope(w0.numerator, w0.denominator)
            )
            t1 = t1_slope.as_fraction()
        else:
            val = self._coord
            t0 = Fraction(0)
            t1 = self._coord(mcg_act_on_slope(self.theta, INF))
        increasing = t1 > t0
        lo, hi = (t0, t1) if increasing else (t1, t0)
        # window is [t0, t1) along the direction of theta
        for _ in range(self.MAX_REDUCE):
            v = val(s)
            if increasing:
                if v >= t1:
                    s = mcg_act_on_slope(self.theta_inv, s)
                elif v < t0:
                    s = mcg_act_on_slope(self.theta, s)
                else:
                    return s
            else:
                if v <= t1:
                    s = mcg_act_on_slope(self.theta_inv, s)
                elif v > t0:
                    s = mcg_act_on_slope(self.theta, s)
                else:
                    return s
        raise OrbitOverflowError(f"orbit reduction of {s} did not terminate")

    # -- tree axis ---------------------------------------------------

    def _cmp_root(self, p: int, q: int, plus: bool) -> int:
        """Sign of p/q - root, root = ((a-d) +- sqrt(disc)) / (2c); q > 0."""
        c2 = 2 * self._qa
        T = c2 * p + self._qb * q  # note qb = d - a, root eq: c t^2+(d-a)t-b
        # p/q - root has the sign of (T -+ q sqrt(disc)) * sign(2c)
        s_c = 1 if c2 > 0 else -1
        if plus:
            if T <= 0:
                core = -1
            else:
                core = 1 if T * T > q * q * self.disc else -1
        else:
            if T >= 0:
                core = 1
            else:
                core = -1 if T * T > q * q * self.disc else 1
        return core * s_c

    def _chord_side_of_root(self, u: Slope, v: Slope, plus: bool) -> int:
        def lin(w: Slope) -> int:
            if w.q == 0:
                return 1 if w.p > 0 else -1
            return self._cmp_root(w.p, w.q, plus)

        return lin(u) * lin(v)

    def _tri_crossed(self, tri: FareyTriple) -> bool:
        sides = {self.side(s) for s in tri.slopes}
        return len(sides) == 2

    def axis_period(self) -> tuple[list[FareyTriple], list[DirectedEdge]]:
        """One period of the tree axis of theta, plus the hanging edge at
        each axis vertex, directed away from the axis."""
        tri = BASE_TRIPLE
        for _ in range(self.MAX_REDUCE):
            if self._tri_crossed(tri):
                break
            stepped = False
            for i in range(3):
                w = tri.slopes[i]
                u, v = (t for j, t in enumerate(tri.slopes) if j != i)
                wside = det(u, w) * det(v, w)
                wside = 1 if wside > 0 else -1
                far_plus = self._chord_side_of_root(u, v, True) != wside
                far_minus = self._chord_side_of_root(u, v, False) != wside
                if far_plus and far_minus:
                    w1, w2 = third_slopes(u, v)
                    tri = FareyTriple(u, v, w2 if w1 == w else w1)
                    stepped = True
                    break
            if not stepped:  # pragma: no cover
                raise RuntimeError("axis search stalled")
        else:  # pragma: no cover
            raise OrbitOverflowError("axis search did not reach the axis")

        def crossed_neighbors(t: FareyTriple) -> list[FareyTriple]:
            out = []
            for i in range(3):
                w = t.slopes[i]
                u, v = (s for j, s in enumerate(t.slopes) if j != i)
                if self.side(u) != self.side(v):
                    w1, w2 = third_slopes(u, v)
                    out.append(FareyTriple(u, v, w2 if w1 == w else w1))
            return out

        v0 = tri
        image = FareyTriple(*(mcg_act_on_slope(self.theta, s) for s in v0.slopes))
        preimage = FareyTriple(*(mcg_act_on_slope(self.theta_inv, s) for s in v0.slopes))
        targets = {image.key(), preimage.key()}
        nbrs = crossed_neighbors(v0)
        if len(nbrs) != 2:  # pragma: no cover
            raise RuntimeError("axis vertex does not have two crossed edges")
        path = [v0]
        prev, cur = v0, nbrs[0]
        for _ in range(self.MAX_REDUCE):
            if cur.key() in targets:
                break
            path.append(cur)
            nxt = [t for t in crossed_neighbors(cur) if t.key() != prev.key()]
            prev, cur = cur, nxt[0]
        else:  # pragma: no cover
            raise OrbitOverflowError("axis walk did not close up")

        period_keys = {t.key() for t in path}
        hanging = []
        for t in path:
            for i in range(3):
                w = t.slopes[i]
                u, v = (s for j, s in enumerate(t.slopes) if j != i)
                if self.side(u) == self.side(v):
                    w1, w2 = third_slopes(u, v)
                    outside = w2 if w1 == w else w1
                    hanging.append(DirectedEdge(u, v, w, outside))
        del period_keys
        return path, hanging
