"""Complex path quadrature, cubic roots and finite-difference derivatives.

The quadrature is an adaptive Gauss-Kronrod (7/15) scheme over piecewise
paths made of straight segments and circular arcs.  Integrands are called
on whole batches of nodes at once, so ``f`` must accept a 1-d complex array
and return either an array of the same length or a 2-d array whose second
axis indexes several integrands sharing the same path.
"""

import cmath
import math
from dataclasses import dataclass, field, replace

import numpy as np

from .errors import (
    DegenerateDegree,
    InvalidArgument,
    NoConvergence,
    SingularSample,
    UnstableDifferentiation,
)

# Gauss-Kronrod 7/15 abscissae and weights (QUADPACK qk15).
_XGK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
_WGK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])

NODES = np.concatenate([-_XGK[:-1], _XGK[::-1]])
KRONROD_WEIGHTS = np.concatenate([_WGK[:-1], _WGK[::-1]])
GAUSS_WEIGHTS = np.zeros(15)
GAUSS_WEIGHTS[[1, 3, 5]] = _WG[:3]
GAUSS_WEIGHTS[7] = _WG[3]
GAUSS_WEIGHTS[[9, 11, 13]] = _WG[2::-1]


@dataclass(frozen=True)
class QuadratureConfig:
    """Tolerances and contour geometry knobs.

    ``tail_length`` truncates infinite rays; ``None`` lets the caller pick a
    length from the integrand's decay rate.  ``radius`` is the semicircle
    radius R of the quantum dilogarithm contour, ``None`` meaning the default
    ``0.5 * min(pi/|gamma|, 1)``.  ``max_panels`` bounds the total work:
    breadth-first bisection to ``max_depth`` could otherwise create 2^30
    panels on an integrand whose tolerance is out of reach.
    """

    abs_tol: float = 1e-12
    rel_tol: float = 1e-10
    max_depth: int = 30
    tail_length: float | None = None
    radius: float | None = None
    max_panels: int = 200_000

    def __post_init__(self):
        if not (self.abs_tol > 0 and self.rel_tol > 0):
            raise InvalidArgument("tolerances must be positive")
        if self.max_depth < 1:
            raise InvalidArgument("max_depth must be a positive integer")
        if self.tail_length is not None and not self.tail_length > 0:
            raise InvalidArgument("tail_length must be positive")
        if self.radius is not None and not self.radius > 0:
            raise InvalidArgument("radius must be positive")

    def with_(self, **changes):
        return replace(self, **changes)


DEFAULT_CONFIG = QuadratureConfig()


@dataclass(frozen=True)
class Line:
    start: complex
    end: complex
    panels: int = 1

    def point(self, s):
        return self.start + (self.end - self.start) * s

    def derivative(self, s):
        return np.full(np.shape(s), self.end - self.start, dtype=complex)

    @property
    def length(self):
        return abs(self.end - self.start)

    @property
    def initial(self):
        return complex(self.start)

    @property
    def final(self):
        return complex(self.end)

    def reversed(self):
        return Line(self.end, self.start, self.panels)


@dataclass(frozen=True)
class Arc:
    center: complex
    radius: float
    angle_start: float
    angle_end: float
    panels: int = 1

    def __post_init__(self):
        if not self.radius > 0:
            raise InvalidArgument("arc radius must be positive")

    def _angle(self, s):
        return self.angle_start + (self.angle_end - self.angle_start) * s

    def point(self, s):
        return self.center + self.radius * np.exp(1j * self._angle(s))

    def derivative(self, s):
        sweep = self.angle_end - self.angle_start
        return 1j * sweep * self.radius * np.exp(1j * self._angle(s))

    @property
    def length(self):
        return self.radius * abs(self.angle_end - self.angle_start)

    @property
    def initial(self):
        return complex(self.center + self.radius * cmath.exp(1j * self.angle_start))

    @property
    def final(self):
        return complex(self.center + self.radius * cmath.exp(1j * self.angle_end))

    def reversed(self):
        return Arc(self.center, self.radius, self.angle_end, self.angle_start, self.panels)


@dataclass(frozen=True)
class ContourPath:
    """A connected chain of :class:`Line` and :class:`Arc` segments."""

    segments: tuple = field(default_factory=tuple)

    def __post_init__(self):
        segs = tuple(self.segments)
        if not segs:
            raise InvalidArgument("a path needs at least one segment")
        object.__setattr__(self, "segments", segs)
        for a, b in zip(segs, segs[1:]):
            gap = abs(a.final - b.initial)
            # arc endpoints come from cos/sin, so exact equality is too strict
            if gap > 1e-12 * max(1.0, abs(a.final)):
                raise InvalidArgument(f"path is disconnected: {a.final} -> {b.initial}")

    @classmethod
    def polygon(cls, *vertices, panels=1):
        if len(vertices) < 2:
            raise InvalidArgument("a polygonal path needs at least two vertices")
        return cls(tuple(Line(complex(a), complex(b), panels)
                         for a, b in zip(vertices, vertices[1:])))

    @property
    def start(self):
        return self.segments[0].initial

    @property
    def end(self):
        return self.segments[-1].final

    @property
    def length(self):
        return sum(s.length for s in self.segments)

    def reversed(self):
        return ContourPath(tuple(s.reversed() for s in reversed(self.segments)))

    def __add__(self, other):
        return ContourPath(self.segments + other.segments)


@dataclass
class QuadratureResult:
    value: complex
    error: float
    evaluations: int
    panels: int
    end_magnitude: float


def integrate_path(f, path, cfg=DEFAULT_CONFIG, full_output=False):
    """Integrate ``f`` along ``path``.

    The returned estimate satisfies ``error <= max(abs_tol, rel_tol*|value|)``
    (componentwise for vector integrands); otherwise :class:`NoConvergence`
    is raised with the best estimate attached.  With ``full_output`` a
    :class:`QuadratureResult` is returned whose ``end_magnitude`` is the
    largest integrand modulus at the final node of the path, which is how
    truncated tails report what was dropped.
    """
    if isinstance(path, (Line, Arc)):
        path = ContourPath((path,))
    segments = path.segments
    total_length = path.length
    if not total_length > 0:
        raise InvalidArgument("path has zero length")

    pending = []
    for idx, seg in enumerate(segments):
        k = max(1, int(seg.panels))
        edges = np.linspace(0.0, 1.0, k + 1)
        pending.extend((idx, edges[j], edges[j + 1], 0) for j in range(k))

    value = None
    error = None
    evaluations = 0
    accepted_panels = 0
    visited = 0
    failed = False
    limited = False

    while pending:
        P = len(pending)
        seg_idx = np.array([p[0] for p in pending])
        lo = np.array([p[1] for p in pending])
        hi = np.array([p[2] for p in pending])
        depth = np.array([p[3] for p in pending])
        half = 0.5 * (hi - lo)
        mid = 0.5 * (hi + lo)
        s = mid[:, None] + half[:, None] * NODES[None, :]

        z = np.empty((P, 15), dtype=complex)
        dz = np.empty((P, 15), dtype=complex)
        plen = np.empty(P)
        for idx in np.unique(seg_idx):
            rows = seg_idx == idx
            seg = segments[idx]
            z[rows] = seg.point(s[rows])
            dz[rows] = seg.derivative(s[rows]) * half[rows, None]
            plen[rows] = seg.length * 2 * half[rows]

        vals = np.asarray(f(z.ravel()), dtype=complex)
        evaluations += vals.shape[0]
        vector = vals.ndim == 2
        vals = vals.reshape((P, 15) + vals.shape[1:])
        bad = ~np.isfinite(vals)
        if bad.any():
            where = np.argwhere(bad)[0]
            raise SingularSample(complex(z[where[0], where[1]]))

        jac = dz[:, :, None] if vector else dz
        kron = np.sum(KRONROD_WEIGHTS[None, :, None] * vals * jac, axis=1) if vector \
            else np.sum(KRONROD_WEIGHTS * vals * jac, axis=1)
        gauss = np.sum(GAUSS_WEIGHTS[None, :, None] * vals * jac, axis=1) if vector \
            else np.sum(GAUSS_WEIGHTS * vals * jac, axis=1)
        perr = np.abs(kron - gauss)
        # splitting cannot beat rounding in the panel sum itself
        absw = np.abs(vals * jac)
        resabs = np.sum(KRONROD_WEIGHTS[None, :, None] * absw, axis=1) if vector \
            else np.sum(KRONROD_WEIGHTS * absw, axis=1)
        floor = 50 * np.finfo(float).eps * resabs

        if value is None:
            value = np.zeros(kron.shape[1:], dtype=complex)
            error = np.zeros(kron.shape[1:])
        estimate = value + kron.sum(axis=0)
        tol = np.maximum(cfg.abs_tol, cfg.rel_tol * np.abs(estimate))
        share = (plen / total_length)
        allowed = tol[None, ...] * (share[:, None] if vector else share)
        met = perr <= allowed
        ok = met | (perr <= floor)
        if (ok & ~met).any():
            limited = True
        if vector:
            ok = ok.all(axis=1)
        visited += P
        at_limit = (depth >= cfg.max_depth) | (visited + 2 * int((~ok).sum()) > cfg.max_panels)
        take = ok | at_limit
        if (at_limit & ~ok).any():
            failed = True
        value = value + kron[take].sum(axis=0)
        error = error + perr[take].sum(axis=0)
        accepted_panels += int(take.sum())

        nxt = []
        for j in np.flatnonzero(~take):
            m = mid[j]
            nxt.append((seg_idx[j], lo[j], m, depth[j] + 1))
            nxt.append((seg_idx[j], m, hi[j], depth[j] + 1))
        pending = nxt

    tol = np.maximum(cfg.abs_tol, cfg.rel_tol * np.abs(value))
    if (failed or limited) and np.any(error > tol):
        raise NoConvergence(value if value.ndim else complex(value),
                            error if error.ndim else float(error))

    out_value = value if value.ndim else complex(value)
    if not full_output:
        return out_value
    end_vals = np.atleast_1d(np.asarray(f(np.array([path.end])), dtype=complex))
    return QuadratureResult(
        value=out_value,
        error=error if error.ndim else float(error),
        evaluations=evaluations,
        panels=accepted_panels,
        end_magnitude=float(np.max(np.abs(end_vals))),
    )


@dataclass
class RootSolveResult:
    root: complex
    residual: float
    iterations: int


def _horner(coeffs, x):
    c3, c2, c1, c0 = coeffs
    value = ((c3 * x + c2) * x + c1) * x + c0
    slope = (3 * c3 * x + 2 * c2) * x + c1
    return value, slope


def solve_cubic(c3, c2, c1, c0, full_output=False):
    """All three roots of ``c3 w^3 + c2 w^2 + c1 w + c0`` (with multiplicity).

    Cardano's formula gives the initial roots; each one is then polished with
    at most five Newton steps, keeping a step only if it lowers the residual.
    """
    c3, c2, c1, c0 = (complex(c) for c in (c3, c2, c1, c0))
    if c3 == 0:
        raise DegenerateDegree("leading coefficient vanishes")
    a, b, c = c2 / c3, c1 / c3, c0 / c3
    p = b - a * a / 3
    q = 2 * a ** 3 / 27 - a * b / 3 + c
    disc = cmath.sqrt((q / 2) ** 2 + (p / 3) ** 3)
    u1, u2 = -q / 2 + disc, -q / 2 - disc
    big = u1 if abs(u1) >= abs(u2) else u2
    if big == 0:
        shifted = [0j, 0j, 0j]
    else:
        cr = cmath.exp(cmath.log(big) / 3)
        omega = cmath.exp(2j * math.pi / 3)
        shifted = []
        for k in range(3):
            ck = cr * omega ** k
            shifted.append(ck - p / (3 * ck))
    coeffs = (c3, c2, c1, c0)
    results = []
    for t in shifted:
        r = t - a / 3
        val, _ = _horner(coeffs, r)
        res = abs(val)
        its = 0
        for _ in range(5):
            val, slope = _horner(coeffs, r)
            if slope == 0 or val == 0:
                break
            trial = r - val / slope
            tval, _ = _horner(coeffs, trial)
            if abs(tval) >= res:
                break
            r, res = trial, abs(tval)
            its += 1
        results.append(RootSolveResult(root=complex(r), residual=float(res), iterations=its))
    if full_output:
        return results
    return [r.root for r in results]


def _richardson_table(estimate, h0, order_step, levels, rel_floor):
    """Shared Richardson driver for even-order error expansions in h."""
    rows = []
    best, best_err = None, math.inf
    for k in range(levels):
        h = h0 / 2 ** k
        row = [estimate(h)]
        for j in range(1, k + 1):
            factor = 4 ** (j * order_step // 2) if order_step == 2 else 4 ** j
            row.append(row[j - 1] + (row[j - 1] - rows[k - 1][j - 1]) / (factor - 1))
        rows.append(row)
        if k == 0:
            continue
        err = abs(rows[k][k] - rows[k - 1][k - 1])
        if err < best_err:
            best, best_err = rows[k][k], err
        elif k > 2 and err > 4 * best_err:
            break
        if best_err <= rel_floor * max(abs(best), 1e-300):
            break
    return best, best_err


def differentiate2(f, z0, h0=0.1, levels=10):
    """Second derivative of an analytic ``f`` at ``z0``.

    Central second differences ``(f(z+h) - 2 f(z) + f(z-h)) / h^2`` on the
    step sequence ``h0 / 2^k`` are Richardson-extrapolated (error series in
    ``h^2``).  Raises :class:`UnstableDifferentiation` if no pair of
    successive extrapolants agrees to ``1e-6`` relative.
    """
    if not h0 > 0:
        raise InvalidArgument("h0 must be positive")
    z0 = complex(z0)
    f0 = complex(f(z0))

    def second(h):
        return (complex(f(z0 + h)) - 2 * f0 + complex(f(z0 - h))) / (h * h)

    best, err = _richardson_table(second, h0, 2, levels, 1e-15)
    if best is None or not np.isfinite(best) or err > 1e-6 * max(1.0, abs(best)):
        raise UnstableDifferentiation(f"second derivative at {z0} did not settle (err={err})")
    return complex(best)


def differentiate1(f, z0, h0=0.1, levels=10):
    """First derivative by Richardson-extrapolated central differences."""
    if not h0 > 0:
        raise InvalidArgument("h0 must be positive")
    z0 = complex(z0)

    def first(h):
        return (complex(f(z0 + h)) - complex(f(z0 - h))) / (2 * h)

    best, err = _richardson_table(first, h0, 2, levels, 1e-15)
    if best is None or not np.isfinite(best) or err > 1e-6 * max(1.0, abs(best)):
        raise UnstableDifferentiation(f"first derivative at {z0} did not settle (err={err})")
    return complex(best)


def richardson_limit(hs, values):
    """Polynomial extrapolation of ``values`` (sampled at ``hs``) to ``h = 0``.

    Neville's scheme on arbitrary abscissae, e.g. ``h = 1/M`` for a sequence
    indexed by M.
    """
    hs = [float(h) for h in hs]
    table = [complex(v) for v in values]
    if len(hs) != len(table) or not hs:
        raise InvalidArgument("hs and values must be non-empty and of equal length")
    n = len(hs)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            table[i] = (hs[i - j] * table[i] - hs[i] * table[i - 1]) / (hs[i - j] - hs[i])
    return table[-1]
