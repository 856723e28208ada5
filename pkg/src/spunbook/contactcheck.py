"""Numerical checks of the explicit contact forms near the binding.

Collar model. On ``[b, c] x S^1 x [0, 1]`` with coordinates ``(s, phi, t)``
the pulled-back form is

    alpha = k dt + e^s (dphi + f_t(s)^2 d_s g_t(s) ds) = k dt + e^s dphi + B ds,

so ``alpha ^ d alpha = e^s (k + d_t B) dt ^ ds ^ dphi``. Here ``(f_t, g_t)`` is
the polar form of the straight-line homotopy ``(1 - lam(s)) p(t) + lam(s) x``
from the base path ``p`` to the basepoint ``x``. Since ``r^2 dtheta = X dY - Y dX``
the coefficient collapses to ``B = e^s lam'(s) (p(t) x x)`` (2D cross
product), which gives an exact ``d_t B`` independent of the sampled route.

Positive orientation is ``dt ^ ds ^ dphi``; ``orientation=-1`` checks the
opposite one by testing ``k - d_t B``.

Binding model. ``h1(r) dphi + h2(r) dtheta`` on ``S^1 x D^2`` is contact iff
``h1 h2' - h2 h1' > 0``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Protocol, Sequence

import numpy as np

MIN_SAMPLES = 8
MARGIN_FLOOR = 1e-6
MARGIN_FACTOR = 3.0
# disagreement budget, in multiples of the Richardson error estimate
AGREEMENT_FACTOR = 4.0


class GridTooCoarseError(ValueError):
    pass


@dataclass(frozen=True)
class GridSpec:
    n_s: int = 129
    n_t: int = 257
    order: int = 2

    @classmethod
    def for_length(cls, length: float, per_unit: int = 128, n_t: int = 257) -> GridSpec:
        """Fixed s-spacing ``1/per_unit`` across a collar of the given length."""
        n = max(MIN_SAMPLES, int(math.ceil(length * per_unit)))
        return cls(n + 1 + n % 2, n_t)

    def __post_init__(self):
        if self.n_s < MIN_SAMPLES or self.n_t < MIN_SAMPLES:
            raise ValueError(f"grid needs at least {MIN_SAMPLES} samples per axis")
        if self.order != 2:
            raise ValueError("only the second-order scheme is implemented")

    def refined(self) -> GridSpec:
        """Halve the spacing while keeping every old node."""
        return GridSpec(2 * self.n_s - 1, 2 * self.n_t - 1, self.order)


def smootherstep(u):
    u = np.clip(u, 0.0, 1.0)
    return u * u * u * (u * (6.0 * u - 15.0) + 10.0)


def smootherstep_prime(u):
    inside = (u > 0.0) & (u < 1.0)
    u = np.clip(u, 0.0, 1.0)
    return np.where(inside, 30.0 * u * u * (u - 1.0) ** 2, 0.0)


# --------------------------------------------------------------------------
# base paths in the disk
# --------------------------------------------------------------------------


class BasePath(Protocol):
    basepoint: tuple[float, float]

    def position(self, t: np.ndarray) -> tuple[np.ndarray, np.ndarray]: ...

    def velocity(self, t: np.ndarray) -> tuple[np.ndarray, np.ndarray]: ...


@dataclass(frozen=True)
class ConstantPath:
    basepoint: tuple[float, float]

    def position(self, t):
        return np.full_like(t, self.basepoint[0]), np.full_like(t, self.basepoint[1])

    def velocity(self, t):
        return np.zeros_like(t), np.zeros_like(t)


@dataclass(frozen=True)
class CirclePath:
    """One loop around ``center``, starting and ending at the basepoint."""

    basepoint: tuple[float, float]
    center: tuple[float, float]
    direction: int = 1

    @property
    def radius(self) -> float:
        return math.dist(self.basepoint, self.center)

    def _theta0(self) -> float:
        return math.atan2(self.basepoint[1] - self.center[1], self.basepoint[0] - self.center[0])

    def position(self, t):
        th = self._theta0() + self.direction * 2 * np.pi * t
        return self.center[0] + self.radius * np.cos(th), self.center[1] + self.radius * np.sin(th)

    def velocity(self, t):
        th = self._theta0() + self.direction * 2 * np.pi * t
        w = self.direction * 2 * np.pi * self.radius
        return -w * np.sin(th), w * np.cos(th)


@dataclass(frozen=True)
class LoopPath:
    """Concatenated circle loops through the basepoint.

    Each loop gets an equal share of ``[0, 1]`` and is reparametrised by a
    quintic smootherstep so the path is C^2 at the junctions.
    """

    basepoint: tuple[float, float]
    loops: tuple[tuple[tuple[float, float], int], ...]

    def _split(self, t):
        n = len(self.loops)
        scaled = np.clip(t, 0.0, 1.0) * n
        idx = np.minimum(np.floor(scaled).astype(int), n - 1)
        return idx, scaled - idx

    def _loop_eval(self, t, deriv: bool):
        if not self.loops:
            return ConstantPath(self.basepoint).velocity(t) if deriv else ConstantPath(self.basepoint).position(t)
        idx, u = self._split(t)
        X = np.zeros_like(t, dtype=float)
        Y = np.zeros_like(t, dtype=float)
        n = len(self.loops)
        for j, (center, direction) in enumerate(self.loops):
            mask = idx == j
            if not mask.any():
                continue
            circle = CirclePath(self.basepoint, center, direction)
            tau = smootherstep(u[mask])
            if deriv:
                vx, vy = circle.velocity(tau)
                scale = n * smootherstep_prime(u[mask])
                X[mask], Y[mask] = vx * scale, vy * scale
            else:
                X[mask], Y[mask] = circle.position(tau)
        return X, Y

    def position(self, t):
        return self._loop_eval(t, False)

    def velocity(self, t):
        return self._loop_eval(t, True)


# --------------------------------------------------------------------------
# homotopy schedules along the collar
# --------------------------------------------------------------------------


def _plateau(s, b, c, width):
    return smootherstep((s - b) / width) * smootherstep((c - s) / width)


_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(24)


def _integrate(fn, lo, hi, pieces=64):
    edges = np.linspace(lo, hi, pieces + 1)
    total = 0.0
    for a, z in zip(edges[:-1], edges[1:]):
        x = 0.5 * (z - a) * _GL_NODES + 0.5 * (z + a)
        total += 0.5 * (z - a) * float(np.dot(_GL_WEIGHTS, fn(x)))
    return total


@dataclass(frozen=True)
class CollarProfile:
    """Straight-line homotopy from a base path to the basepoint.

    ``ramp="weighted"`` uses ``lam' = e^{-s} psi(s) / N`` with ``psi`` a
    plateau that vanishes near ``b`` and on ``[c - tail, c]``, so ``e^s lam'`` is at most ``1/N``
    and ``N`` grows with the collar length. ``ramp="plain"`` is a single
    smootherstep across the collar. Both keep ``g_t`` constant near ``c``.
    """

    b: float
    c: float
    path: BasePath
    ramp: str = "weighted"
    ramp_width: float = 0.25
    name: str = ""
    tail: float = 0.1
    _norm: float = field(init=False, repr=False, compare=False, default=0.0)

    def __post_init__(self):
        if not self.c - self.tail > self.b or self.tail <= 0:
            raise ValueError("collar needs c - tail > b and a positive tail")
        if self.ramp not in ("weighted", "plain"):
            raise ValueError(f"unknown ramp {self.ramp!r}")
        if self.ramp == "weighted":
            if 2 * self.ramp_width + self.tail > self.c - self.b:
                raise ValueError("ramp width too large for the collar")
            w, end = self.ramp_width, self.end
            fn = lambda s: np.exp(-s) * _plateau(s, self.b, end, w)
            norm = sum(_integrate(fn, lo, up, pieces=4) for lo, up in [(self.b, self.b + w), (self.b + w, end - w), (end - w, end)])
            object.__setattr__(self, "_norm", norm)

    @property
    def basepoint(self) -> tuple[float, float]:
        return self.path.basepoint

    @property
    def length(self) -> float:
        return self.c - self.b

    @property
    def end(self) -> float:
        """Where the homotopy reaches the basepoint; g_t is constant on ``[end, c]``."""
        return self.c - self.tail

    def lam_prime(self, s):
        s = np.asarray(s, dtype=float)
        if self.ramp == "weighted":
            return np.exp(-s) * _plateau(s, self.b, self.end, self.ramp_width) / self._norm
        L = self.end - self.b
        return smootherstep_prime((s - self.b) / L) / L

    def lam(self, s):
        s = np.asarray(s, dtype=float)
        if self.ramp == "plain":
            return smootherstep((s - self.b) / (self.end - self.b))
        # the integrand is smooth between these breakpoints
        w = self.ramp_width
        knots = [self.b, self.b + w, self.end - w, self.end]
        out = np.empty_like(s)
        for i, si in np.ndenumerate(s):
            hi = min(float(si), self.end)
            total = 0.0
            for lo, up in zip(knots[:-1], knots[1:]):
                if hi <= lo:
                    break
                total += _integrate(self.lam_prime, lo, min(hi, up), pieces=4)
            out[i] = total
        return np.clip(out, 0.0, 1.0)

    def grid(self, grid: GridSpec) -> tuple[np.ndarray, np.ndarray]:
        return np.linspace(self.b, self.c, grid.n_s), np.linspace(0.0, 1.0, grid.n_t)

    def positions(self, s, t):
        """Cartesian samples ``X[i, j], Y[i, j]`` at ``(s_i, t_j)``."""
        lam = self.lam(s)[:, None]
        px, py = self.path.position(t)
        x0, y0 = self.basepoint
        return (1 - lam) * px[None, :] + lam * x0, (1 - lam) * py[None, :] + lam * y0

    def polar(self, s, t):
        X, Y = self.positions(s, t)
        return np.hypot(X, Y), np.unwrap(np.arctan2(Y, X), axis=0)

    def coefficient_B(self, s, t):
        px, py = self.path.position(t)
        x0, y0 = self.basepoint
        cross = px * y0 - py * x0
        return (np.exp(s) * self.lam_prime(s))[:, None] * cross[None, :]

    def dtB(self, s, t):
        vx, vy = self.path.velocity(t)
        x0, y0 = self.basepoint
        cross = vx * y0 - vy * x0
        return (np.exp(s) * self.lam_prime(s))[:, None] * cross[None, :]

    def validate(self, grid: GridSpec | None = None) -> list[str]:
        grid = grid or default_grid(self)
        s, t = self.grid(grid)
        f, g = self.polar(s, t)
        problems = []
        if not (np.isfinite(f).all() and np.isfinite(g).all()):
            problems.append("non-finite samples")
        if f.max() >= 1.0:
            problems.append(f"homotopy leaves the open disk (max radius {f.max():.6g})")
        tail = s >= self.end
        if np.abs(self.lam_prime(s[tail])).max(initial=0.0) > 0:
            problems.append("g_t is not constant near c")
        return problems


@dataclass(frozen=True)
class SampledCollarProfile:
    """Collar data given only as polar samples ``f[i, j], g[i, j]``.

    No closed form is available; ``d_t B`` comes from finite differences.
    """

    s: tuple[float, ...]
    t: tuple[float, ...]
    f: tuple[tuple[float, ...], ...]
    g: tuple[tuple[float, ...], ...]
    name: str = ""

    def arrays(self):
        return (np.asarray(self.s, float), np.asarray(self.t, float), np.asarray(self.f, float), np.asarray(self.g, float))

    def validate(self) -> list[str]:
        s, t, f, g = self.arrays()
        problems = []
        if len(s) < MIN_SAMPLES or len(t) < MIN_SAMPLES:
            problems.append(f"fewer than {MIN_SAMPLES} samples on an axis")
        if f.shape != (len(s), len(t)) or g.shape != f.shape:
            problems.append("sample grids do not match the axes")
            return problems
        if not (np.isfinite(f).all() and np.isfinite(g).all()):
            problems.append("non-finite samples")
        if f.min() < 0 or f.max() >= 1:
            problems.append("radius samples outside [0, 1)")
        if np.ptp(g[-2:], axis=0).max() > 1e-12:
            problems.append("g_t is not constant near c")
        return problems

    def to_json(self) -> dict:
        return {"s": list(self.s), "t": list(self.t), "f": [list(r) for r in self.f], "g": [list(r) for r in self.g], "name": self.name}

    @classmethod
    def from_json(cls, data: dict) -> SampledCollarProfile:
        return cls(
            tuple(map(float, data["s"])),
            tuple(map(float, data["t"])),
            tuple(tuple(map(float, r)) for r in data["f"]),
            tuple(tuple(map(float, r)) for r in data["g"]),
            data.get("name", ""),
        )

    @classmethod
    def from_profile(cls, p: CollarProfile, grid: GridSpec) -> SampledCollarProfile:
        s, t = p.grid(grid)
        f, g = p.polar(s, t)
        return cls(tuple(s), tuple(t), tuple(map(tuple, f)), tuple(map(tuple, g)), p.name)


# --------------------------------------------------------------------------
# evaluation
# --------------------------------------------------------------------------


def _d(a, x, axis):
    return np.gradient(a, x, axis=axis, edge_order=2)


def _fd_B(s, X, Y):
    return np.exp(s)[:, None] * (X * _d(Y, s, 0) - Y * _d(X, s, 0))


def _fd_volume(s, t, X, Y, k):
    """Coefficient of alpha ^ d alpha on dt ^ ds ^ dphi, all derivatives by FD.

    With components ``(A_t, A_s, A_phi) = (k, B, e^s)`` independent of phi the
    coefficient is ``A_t d_s A_phi - A_s d_t A_phi + A_phi (d_t A_s - d_s A_t)``.
    """
    A_s = _fd_B(s, X, Y)
    A_phi = np.broadcast_to(np.exp(s)[:, None], A_s.shape)
    A_t = np.full(A_s.shape, float(k))
    return A_t * _d(A_phi, s, 0) - A_s * _d(A_phi, t, 1) + A_phi * (_d(A_s, t, 1) - _d(A_t, s, 0))


def _fd_dtB(s, t, X, Y):
    return _d(_fd_B(s, X, Y), t, 1)


@dataclass(frozen=True)
class CollarReport:
    name: str
    grid: GridSpec
    orientation: int
    k_star: float
    margin: float
    min_dtB: float
    argmin: tuple[float, float]
    fd_error_estimate: float
    max_disagreement: float
    tolerance: float
    closed_form: bool

    @property
    def agreement_ok(self) -> bool:
        return self.max_disagreement <= self.tolerance

    @property
    def flagged(self) -> bool:
        return not self.agreement_ok

    def lines(self) -> list[str]:
        return [
            f"collar profile: {self.name or '(unnamed)'}",
            f"grid: {self.grid.n_s} x {self.grid.n_t} (order {self.grid.order}), orientation {self.orientation:+d}",
            f"min d_tB: {self.min_dtB:.9g} at s={self.argmin[0]:.6g}, t={self.argmin[1]:.6g}",
            f"fd error estimate: {self.fd_error_estimate:.3e}",
            f"closed form vs fd: max disagreement {self.max_disagreement:.3e}, tolerance {self.tolerance:.3e} -> "
            + ("ok" if self.agreement_ok else "GRID TOO COARSE"),
            f"margin: {self.margin:.3e}",
            f"k_star: {self.k_star:.9g}",
        ]

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "grid": [self.grid.n_s, self.grid.n_t, self.grid.order],
            "orientation": self.orientation,
            "k_star": self.k_star,
            "margin": self.margin,
            "min_dtB": self.min_dtB,
            "argmin": list(self.argmin),
            "fd_error_estimate": self.fd_error_estimate,
            "max_disagreement": self.max_disagreement,
            "tolerance": self.tolerance,
            "agreement_ok": self.agreement_ok,
        }


def _richardson(fine: np.ndarray, coarse: np.ndarray) -> np.ndarray:
    # second-order scheme: error(h) ~ (A_2h - A_h) / 3
    return np.abs(fine[::2, ::2] - coarse) / 3.0


def _prepare(p, grid):
    """Samples, closed-form d_tB (or None) and FD d_tB on the grid and its 2h subgrid."""
    if isinstance(p, SampledCollarProfile):
        s, t, f, g = p.arrays()
        exact = None
    else:
        s, t = p.grid(grid)
        f, g = p.polar(s, t)
        exact = p.dtB(s, t)
    X, Y = f * np.cos(g), f * np.sin(g)
    return s, t, X, Y, exact


def _evaluate(p, grid: GridSpec, k: float):
    s, t, X, Y, exact = _prepare(p, grid)
    dtB_fd = _fd_dtB(s, t, X, Y)
    # the 2h grid is every other node; it keeps at least 4 points per axis
    s2, t2, X2, Y2 = s[::2], t[::2], X[::2, ::2], Y[::2, ::2]
    err_dtB = float(_richardson(dtB_fd, _fd_dtB(s2, t2, X2, Y2)).max())
    vol_fine = _fd_volume(s, t, X, Y, k)
    err_vol = float(_richardson(vol_fine, _fd_volume(s2, t2, X2, Y2, k)).max())
    dtB = exact if exact is not None else dtB_fd
    closed = np.exp(s)[:, None] * (k + dtB)
    scale = float(np.abs(closed).max()) or 1.0
    disagreement = float(np.abs(vol_fine - closed).max())
    tolerance = AGREEMENT_FACTOR * err_vol + 1e-12 * scale
    return s, t, dtB, err_dtB, disagreement, tolerance, exact is not None


def collar_min_k(p, grid: GridSpec | None = None, orientation: int = 1) -> CollarReport:
    """Smallest ``k`` (plus margin) making the collar form contact on the grid."""
    if orientation not in (1, -1):
        raise ValueError("orientation must be +1 or -1")
    if grid is None:
        grid = default_grid(p)
    problems = p.validate(grid) if isinstance(p, CollarProfile) else p.validate()
    if problems:
        raise ValueError("invalid collar profile: " + "; ".join(problems))
    if isinstance(p, SampledCollarProfile):
        grid = GridSpec(len(p.s), len(p.t))
    # the agreement test is run at k = 1; the coefficient is affine in k
    s, t, dtB, err_dtB, disagreement, tolerance, closed = _evaluate(p, grid, 1.0)
    signed = orientation * dtB
    i, j = np.unravel_index(int(np.argmin(signed)), signed.shape)
    min_dtB = float(signed[i, j])
    margin = max(MARGIN_FLOOR, MARGIN_FACTOR * err_dtB)
    k_star = max(0.0, -min_dtB) + margin
    return CollarReport(
        getattr(p, "name", ""),
        grid,
        orientation,
        k_star,
        margin,
        min_dtB,
        (float(s[i]), float(t[j])),
        err_dtB,
        disagreement,
        tolerance,
        closed,
    )


@dataclass(frozen=True)
class PositivityReport:
    k: float
    min_value: float
    location: tuple[float, float]
    orientation: int

    @property
    def passed(self) -> bool:
        return self.min_value > 0.0

    def lines(self) -> list[str]:
        verdict = "pass" if self.passed else "FAIL"
        return [
            f"k = {self.k:.9g}: min of k + d_tB = {self.min_value:.9g} at s={self.location[0]:.6g}, t={self.location[1]:.6g} -> {verdict}"
        ]


def verify_form_positive(k: float, p, grid: GridSpec | None = None, orientation: int = 1) -> PositivityReport:
    """Strict positivity of ``k + d_t B`` over the grid."""
    grid = grid or default_grid(p)
    if isinstance(p, SampledCollarProfile):
        s, t, f, g = p.arrays()
        X, Y = f * np.cos(g), f * np.sin(g)
        dtB = _fd_dtB(s, t, X, Y)
    else:
        s, t = p.grid(grid)
        dtB = p.dtB(s, t)
    vals = k + orientation * dtB
    i, j = np.unravel_index(int(np.argmin(vals)), vals.shape)
    return PositivityReport(float(k), float(vals[i, j]), (float(s[i]), float(t[j])), orientation)


# --------------------------------------------------------------------------
# bundled profiles
# --------------------------------------------------------------------------

DEFAULT_BASEPOINT = (0.4, 0.0)


def circle_profile(b: float = 0.0, c: float = 1.0, radius: float = 0.5, basepoint=DEFAULT_BASEPOINT, ramp="weighted") -> CollarProfile:
    """Base path: the circle of the given radius through the basepoint, centred ``radius`` to its left."""
    center = (basepoint[0] - radius, basepoint[1])
    return CollarProfile(b, c, CirclePath(tuple(basepoint), center), ramp, name=f"circle(r={radius}, b={b}, c={c}, {ramp})")


def constant_profile(b: float = 0.0, c: float = 1.0, basepoint=DEFAULT_BASEPOINT) -> CollarProfile:
    """Base path constant in t, so d_tB vanishes identically."""
    return CollarProfile(b, c, ConstantPath(tuple(basepoint)), name=f"constant(b={b}, c={c})")


LOOP_RADIUS = 0.25


def path_profile(steps: Sequence[tuple[int, str]], n_cycles: int, b: float = 0.0, c: float = 1.0) -> CollarProfile:
    """Base path built from loop steps ``(cycle_index, 'c' | "c'")``.

    Critical value ``i`` sits inside a circle of radius ``LOOP_RADIUS`` through
    the basepoint, in direction ``2 pi (i - 1) / n_cycles``; a ``c`` step runs
    it counterclockwise and a ``c'`` step clockwise.
    """
    x0, y0 = DEFAULT_BASEPOINT
    loops = []
    for idx, kind in steps:
        ang = 2 * math.pi * (idx - 1) / max(n_cycles, 1)
        center = (x0 + LOOP_RADIUS * math.cos(ang), y0 + LOOP_RADIUS * math.sin(ang))
        loops.append((center, 1 if kind == "c" else -1))
    return CollarProfile(b, c, LoopPath(DEFAULT_BASEPOINT, tuple(loops)), name=f"loops({len(loops)} steps)")


LOOP_SAMPLES = 128


def grid_for_path(n_steps: int, length: float = 1.0) -> GridSpec:
    return GridSpec.for_length(length, n_t=max(257, LOOP_SAMPLES * n_steps + 1))


def default_grid(p) -> GridSpec:
    """Fixed s-spacing, and enough t-samples to resolve every loop."""
    if not isinstance(p, CollarProfile):
        return GridSpec()
    if isinstance(p.path, LoopPath):
        return grid_for_path(len(p.path.loops), p.length)
    return GridSpec.for_length(p.length)


BUNDLED_PROFILES = {
    "circle": lambda: circle_profile(),
    "circle-long": lambda: circle_profile(0.0, 3.0),
    "circle-plain": lambda: circle_profile(ramp="plain"),
    "constant": lambda: constant_profile(),
    "loops": lambda: path_profile([(1, "c"), (2, "c'"), (3, "c")], 7),
}


# --------------------------------------------------------------------------
# binding model
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class BindingReport:
    checks: tuple[tuple[str, bool, str], ...]
    min_coefficient: float
    location: float

    @property
    def passed(self) -> bool:
        return all(ok for _, ok, _ in self.checks)

    def lines(self) -> list[str]:
        return [f"{'pass' if ok else 'FAIL'}  {name}: {detail}" for name, ok, detail in self.checks]


def binding_check(
    r: Sequence[float],
    h1: Sequence[float],
    h2: Sequence[float],
    near_zero: float | None = None,
    rtol: float = 1e-6,
) -> BindingReport:
    """Contact condition and boundary behaviour of ``h1 dphi + h2 dtheta``.

    ``r`` must be increasing with ``r > 0``. ``near_zero`` bounds the radii on
    which ``h2 = r^2`` is required (default: the first tenth of the range).
    """
    r = np.asarray(r, float)
    h1 = np.asarray(h1, float)
    h2 = np.asarray(h2, float)
    if r.ndim != 1 or len(r) < MIN_SAMPLES or r.shape != h1.shape or r.shape != h2.shape:
        raise ValueError("profiles must be 1-D samples of equal length on at least 8 radii")
    if r[0] <= 0 or np.any(np.diff(r) <= 0):
        raise ValueError("radii must be positive and increasing")
    d1 = np.gradient(h1, r, edge_order=2)
    d2 = np.gradient(h2, r, edge_order=2)
    coef = h1 * d2 - h2 * d1
    scale = max(float(np.abs(h1).max()), float(np.abs(h2).max()), 1.0)
    slack = rtol * scale
    i = int(np.argmin(coef))
    checks = [
        ("contact", bool(coef.min() > 0), f"min h1*h2' - h2*h1' = {coef[i]:.6g} at r={r[i]:.6g}"),
    ]
    j = int(np.argmin(h1))
    checks.append(("h1 positive", bool(h1.min() > 0), f"min h1 = {h1[j]:.6g} at r={r[j]:.6g}"))
    j = int(np.argmax(d1))
    checks.append(("h1 non-increasing", bool(d1.max() <= slack), f"max h1' = {d1[j]:.6g} at r={r[j]:.6g}"))
    j = int(np.argmin(d2))
    checks.append(("h2 non-decreasing", bool(d2.min() >= -slack), f"min h2' = {d2[j]:.6g} at r={r[j]:.6g}"))
    cut = near_zero if near_zero is not None else r[0] + 0.1 * (r[-1] - r[0])
    near = r <= cut
    dev = np.abs(h2[near] / r[near] ** 2 - 1.0)
    j = int(np.argmax(dev))
    checks.append(("h2 = r^2 near 0", bool(dev.max() <= rtol), f"max |h2/r^2 - 1| = {dev[j]:.3g} at r={r[near][j]:.6g}"))
    return BindingReport(tuple(checks), float(coef[i]), float(r[i]))


BINDING_MODELS = {
    "standard": (lambda r: 2 - r**2, lambda r: r**2),
    "flat": (lambda r: np.ones_like(r), lambda r: r**2),
    "reversed": (lambda r: r**2, lambda r: np.ones_like(r)),
}


def binding_model(name: str, n: int = 200, r_max: float = 1.0) -> BindingReport:
    h1, h2 = BINDING_MODELS[name]
    r = np.linspace(r_max / n, r_max, n)
    return binding_check(r, h1(r), h2(r))
