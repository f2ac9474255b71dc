"""Unimodular lattices and grids in the plane.

A lattice is stored as a basis in *pre-flow* coordinates together with a
pending diagonal flow ``g_t`` encoded by ``scale = e^{2t}``.  A pre-flow
vector ``(A, Y)`` has actual coordinates ``(A e^t, Y e^-t)``.  Shears applied
after the flow stay rational in pre-flow coordinates, so game states built
from rational balls (``scale = 1/radius``) are reduced in exact arithmetic
and only converted to floats at the end.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

Real = Union[int, float, Fraction]

TOL_DET = 1e-12
TOL_GEOM = 1e-9
T_MAX = 300.0
MAX_CONDITION = 1e12

SIN_PI_3_INV = 2 / math.sqrt(3)


class LatticeError(ValueError):
    pass


class NotPrimitive(LatticeError):
    pass


class ConditionOverflow(LatticeError):
    pass


class FlowOverflow(OverflowError):
    pass


def exact(x: Real) -> Real:
    """Return ``x`` as an int or Fraction (floats convert exactly)."""
    if isinstance(x, (int, Fraction)):
        return x
    if isinstance(x, float):
        if not math.isfinite(x):
            raise ValueError(f"non-finite value {x!r}")
        return Fraction(x)
    return Fraction(x)


def _sqrt(x: Real) -> float:
    try:
        return math.sqrt(float(x))
    except OverflowError:
        x = Fraction(x)
        return math.exp(0.5 * (math.log(x.numerator) - math.log(x.denominator)))


@dataclass(frozen=True)
class Vec2:
    v1: Real
    v2: Real

    def __add__(self, o: "Vec2") -> "Vec2":
        return Vec2(self.v1 + o.v1, self.v2 + o.v2)

    def __sub__(self, o: "Vec2") -> "Vec2":
        return Vec2(self.v1 - o.v1, self.v2 - o.v2)

    def __neg__(self) -> "Vec2":
        return Vec2(-self.v1, -self.v2)

    def __mul__(self, k: Real) -> "Vec2":
        return Vec2(self.v1 * k, self.v2 * k)

    __rmul__ = __mul__

    def dot(self, o: "Vec2") -> Real:
        return self.v1 * o.v1 + self.v2 * o.v2

    def wedge(self, o: "Vec2") -> Real:
        return self.v1 * o.v2 - self.v2 * o.v1

    def norm(self) -> float:
        return math.hypot(float(self.v1), float(self.v2))

    def to_float(self) -> "Vec2":
        return Vec2(float(self.v1), float(self.v2))


@dataclass(frozen=True)
class Mat2:
    m11: Real
    m12: Real
    m21: Real
    m22: Real

    @classmethod
    def identity(cls) -> "Mat2":
        return cls(1, 0, 0, 1)

    @classmethod
    def from_columns(cls, c1: Vec2, c2: Vec2) -> "Mat2":
        return cls(c1.v1, c2.v1, c1.v2, c2.v2)

    @property
    def col1(self) -> Vec2:
        return Vec2(self.m11, self.m21)

    @property
    def col2(self) -> Vec2:
        return Vec2(self.m12, self.m22)

    def det(self) -> Real:
        return self.m11 * self.m22 - self.m12 * self.m21

    def inverse(self) -> "Mat2":
        d = self.det()
        if d == 0:
            raise ZeroDivisionError("singular matrix")
        if isinstance(d, int):
            d = Fraction(d)
        return Mat2(self.m22 / d, -self.m12 / d, -self.m21 / d, self.m11 / d)

    def __matmul__(self, o):
        if isinstance(o, Vec2):
            return Vec2(self.m11 * o.v1 + self.m12 * o.v2, self.m21 * o.v1 + self.m22 * o.v2)
        if isinstance(o, Mat2):
            return Mat2(
                self.m11 * o.m11 + self.m12 * o.m21,
                self.m11 * o.m12 + self.m12 * o.m22,
                self.m21 * o.m11 + self.m22 * o.m21,
                self.m21 * o.m12 + self.m22 * o.m22,
            )
        if isinstance(o, Grid):
            return o.transformed(self)
        if isinstance(o, Lattice):
            return o.transformed(self)
        return NotImplemented

    def to_float(self) -> "Mat2":
        return Mat2(float(self.m11), float(self.m12), float(self.m21), float(self.m22))

    def is_close(self, o: "Mat2", tol: float = TOL_GEOM) -> bool:
        return all(
            abs(float(a) - float(b)) <= tol
            for a, b in zip(
                (self.m11, self.m12, self.m21, self.m22), (o.m11, o.m12, o.m21, o.m22)
            )
        )

    def singular_values(self) -> tuple[float, float]:
        f = sum(float(v) ** 2 for v in (self.m11, self.m12, self.m21, self.m22))
        d = abs(float(self.det()))
        smax = math.sqrt((f + math.sqrt(max(f * f - 4 * d * d, 0.0))) / 2)
        return (d / smax if smax else 0.0), smax


def shear(x: Real) -> Mat2:
    """The horocycle element u_x = [[1, -x], [0, 1]]."""
    return Mat2(1, -x, 0, 1)


def flow(t: float) -> Mat2:
    """The diagonal element g_t = diag(e^t, e^-t)."""
    if not math.isfinite(t) or abs(t) > T_MAX:
        raise FlowOverflow(f"|t| = {abs(t)} exceeds t_max = {T_MAX}")
    return Mat2(math.exp(t), 0, 0, math.exp(-t))


# -- pre-flow arithmetic ------------------------------------------------------
# A pre-flow vector is a tuple (A, Y); the quadratic form is S*A^2 + Y^2/S.


def _ip(s, u, v):
    return s * u[0] * v[0] + u[1] * v[1] / s


def _sub(u, v, m=1):
    return (u[0] - m * v[0], u[1] - m * v[1])


def _lagrange(s, u, v):
    """Lagrange/Gauss reduction; returns (u, v, cu, cv) with integer coords."""
    cu, cv = (1, 0), (0, 1)
    nu, nv = _ip(s, u, u), _ip(s, v, v)
    if nu > nv:
        u, v, cu, cv, nu, nv = v, u, cv, cu, nv, nu
    for _ in range(100000):
        m = round(_ip(s, u, v) / nu)
        if m == 0:
            break
        v = _sub(v, u, m)
        cv = (cv[0] - m * cu[0], cv[1] - m * cu[1])
        nv = _ip(s, v, v)
        if nv < nu:
            u, v, cu, cv, nu, nv = v, u, cv, cu, nv, nu
        else:
            break
    else:  # pragma: no cover
        raise LatticeError("reduction did not terminate")
    return u, v, cu, cv


class Lattice:
    """A unimodular lattice; columns of ``basis`` are the basis vectors."""

    __slots__ = ("_pre", "_scale", "_reduced")

    def __init__(self, basis: Mat2, scale: Real = 1):
        d = basis.det()
        if isinstance(d, float) or isinstance(scale, float):
            ok = abs(abs(float(d)) - 1) <= TOL_DET * max(1.0, _mat_size(basis))
        else:
            ok = abs(d) == 1
        if not ok:
            raise LatticeError(f"basis determinant {d} is not +-1")
        if scale <= 0:
            raise LatticeError("scale must be positive")
        self._pre = basis
        self._scale = scale
        self._reduced = None

    # construction helpers
    @property
    def pre_basis(self) -> Mat2:
        return self._pre

    @property
    def scale(self) -> Real:
        return self._scale

    def _embed(self, a, y) -> Vec2:
        if self._scale == 1:
            return Vec2(a, y)
        r = _sqrt(self._scale)
        return Vec2(float(a) * r, float(y) / r)

    @property
    def basis(self) -> Mat2:
        return Mat2.from_columns(
            self._embed(self._pre.m11, self._pre.m21), self._embed(self._pre.m12, self._pre.m22)
        )

    def sheared(self, x: Real) -> "Lattice":
        """u_x applied after the current state."""
        p, s = self._pre, self._scale
        k = x / s if s != 1 else x
        return Lattice(Mat2(p.m11 - k * p.m21, p.m12 - k * p.m22, p.m21, p.m22), s)

    def flowed(self, t: float) -> "Lattice":
        if not math.isfinite(t) or abs(t) > T_MAX:
            raise FlowOverflow(f"|t| = {abs(t)} exceeds t_max = {T_MAX}")
        return Lattice(self._pre, self._scale * math.exp(2 * t))

    def flowed_radius(self, factor: Real) -> "Lattice":
        """Flow by t = -1/2 log(factor); exact when ``factor`` is rational."""
        if factor <= 0:
            raise ValueError("radius factor must be positive")
        return Lattice(self._pre, self._scale / factor)

    def transformed(self, m: Mat2) -> "Lattice":
        return Lattice(m @ self.basis)

    def reduced(self):
        """(u, v, cu, cv) in pre-flow coordinates, cached."""
        if self._reduced is None:
            p = self._pre
            u, v = (p.m11, p.m21), (p.m12, p.m22)
            if self._scale == 1 and any(isinstance(e, float) for e in (p.m11, p.m12, p.m21, p.m22)):
                smin, smax = p.singular_values()
                if smin == 0 or smax / smin > MAX_CONDITION:
                    raise ConditionOverflow("basis condition number exceeds 1e12")
            self._reduced = _lagrange(self._scale, u, v)
        return self._reduced

    def rebased(self) -> "Lattice":
        """The same lattice stored in its reduced basis."""
        u, v, _, _ = self.reduced()
        out = Lattice(Mat2(u[0], v[0], u[1], v[1]), self._scale)
        out._reduced = (u, v, (1, 0), (0, 1))
        return out

    def norm2(self, pre_vec) -> Real:
        return _ip(self._scale, pre_vec, pre_vec)

    def coords_of(self, pre_vec) -> Vec2:
        return self._embed(*pre_vec)

    def pre_of(self, v: Vec2):
        """Pre-flow coordinates of an actual vector (exact when scale == 1)."""
        if self._scale == 1:
            return (v.v1, v.v2)
        r = _sqrt(self._scale)
        return (v.v1 / r, v.v2 * r)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Lattice):
            return NotImplemented
        m = self.basis.to_float().inverse() @ other.basis.to_float()
        ents = (m.m11, m.m12, m.m21, m.m22)
        tol = 1e-8 * max(1.0, max(abs(e) for e in ents))
        if any(abs(e - round(e)) > tol for e in ents):
            return False
        return abs(round(m.m11) * round(m.m22) - round(m.m12) * round(m.m21)) == 1

    __hash__ = None

    def __repr__(self) -> str:
        return f"Lattice({self.basis.to_float()})"


def _mat_size(m: Mat2) -> float:
    return max(abs(float(e)) for e in (m.m11, m.m12, m.m21, m.m22)) ** 2


def _floor(x) -> int:
    return math.floor(x)


class Grid:
    """A unimodular grid: a lattice together with a translation class."""

    __slots__ = ("lattice", "_pre_r")

    def __init__(self, lattice: Lattice, translation: Vec2, *, pre: bool = False):
        self.lattice = lattice
        r = (translation.v1, translation.v2) if pre else lattice.pre_of(translation)
        self._pre_r = _reduce_translation(lattice, r)

    @property
    def pre_translation(self):
        return self._pre_r

    @property
    def translation(self) -> Vec2:
        return self.lattice.coords_of(self._pre_r)

    def sheared(self, x: Real) -> "Grid":
        s = self.lattice.scale
        k = x / s if s != 1 else x
        a, y = self._pre_r
        return Grid(self.lattice.sheared(x), Vec2(a - k * y, y), pre=True)

    def rebased(self) -> "Grid":
        return Grid(self.lattice.rebased(), Vec2(*self._pre_r), pre=True)

    def flowed(self, t: float) -> "Grid":
        return Grid(self.lattice.flowed(t), Vec2(*self._pre_r), pre=True)

    def flowed_radius(self, factor: Real) -> "Grid":
        return Grid(self.lattice.flowed_radius(factor), Vec2(*self._pre_r), pre=True)

    def transformed(self, m: Mat2) -> "Grid":
        return Grid(self.lattice.transformed(m), m @ self.translation.to_float())

    def __eq__(self, other) -> bool:
        if not isinstance(other, Grid):
            return NotImplemented
        if self.lattice != other.lattice:
            return False
        d = (self.translation - other.translation).to_float()
        c = self.lattice.basis.to_float().inverse() @ d
        return all(abs(e - round(e)) <= 1e-8 for e in (c.v1, c.v2))

    __hash__ = None

    def __repr__(self) -> str:
        return f"Grid({self.lattice!r}, {self.translation.to_float()})"


def _solve(u, v, r):
    """Real coefficients (a, b) with r = a u + b v (pre-flow coordinates)."""
    d = u[0] * v[1] - u[1] * v[0]
    if isinstance(d, int):
        d = Fraction(d)
    a = (r[0] * v[1] - r[1] * v[0]) / d
    b = (u[0] * r[1] - u[1] * r[0]) / d
    return a, b


def _reduce_translation(lattice: Lattice, r):
    u, v, _, _ = lattice.reduced()
    a, b = _solve(u, v, r)
    fa, fb = _floor(a), _floor(b)
    return (r[0] - fa * u[0] - fb * v[0], r[1] - fa * u[1] - fb * v[1])


@dataclass(frozen=True)
class MinimaReport:
    lambda1: float
    lambda2: float
    v1: Vec2
    v2: Vec2
    mu: float


def lattice_of_real(x: Real) -> Lattice:
    """Lambda_x = u_x Z^2."""
    return Lattice(shear(exact(x)))


def grid_of_real(x: Real, gamma: Real) -> Grid:
    """Lambda_{x,gamma} = Lambda_x + (gamma, 0)."""
    return Grid(lattice_of_real(x), Vec2(exact(gamma), 0))


def gauss_reduce(lat: Lattice) -> MinimaReport:
    """Successive minima, a reduced basis and the covering radius."""
    u, v, _, _ = lat.reduced()
    n1, n2 = lat.norm2(u), lat.norm2(v)
    l1, l2 = _sqrt(n1), _sqrt(n2)
    v1, v2 = lat.coords_of(u).to_float(), lat.coords_of(v).to_float()
    # obtuse superbase: pick the sign of v2 with v1.v2 <= 0
    w = v2 if _ip(lat.scale, u, v) <= 0 else -v2
    third = (v1 + w).norm()
    det = abs(float(v1.wedge(v2)))
    mu = l1 * l2 * third / (2 * det)
    return MinimaReport(l1, l2, v1, v2, mu)


def _closest(lat: Lattice, r):
    """Grid point r + lattice of minimal norm, as a pre-flow vector.

    The search runs in floats on the reduced basis; the winner is rebuilt
    exactly.
    """
    u, v, _, _ = lat.reduced()
    fu, fv, fr = (lat.coords_of(w).to_float() for w in (u, v, r))
    nu, nv, b_uv = fu.dot(fu), fv.dot(fv), fu.dot(fv)
    d = fu.wedge(fv)
    a = fr.wedge(fv) / d
    b = fu.wedge(fr) / d

    def fnorm(i, j):
        p = fr + fu * i + fv * j
        return p.dot(p)

    best_ij = (-round(a), -round(b))
    best_n = fnorm(*best_ij)
    span = SIN_PI_3_INV * math.sqrt(best_n) * (1 + 1e-9) / math.sqrt(nv) + 1
    for j in range(math.floor(-b - span), math.ceil(-b + span) + 1):
        istar = -a - (b + j) * b_uv / nu
        for i in (math.floor(istar), math.floor(istar) + 1):
            n = fnorm(i, j)
            if n < best_n:
                best_ij, best_n = (i, j), n
    i, j = best_ij
    best = (r[0] + i * u[0] + j * v[0], r[1] + i * u[1] + j * v[1])
    return best, lat.norm2(best)


def shortest_grid_vector(g: Grid) -> tuple[Vec2, float]:
    """The grid point of minimal norm and that norm."""
    p, n = _closest(g.lattice, g.pre_translation)
    return g.lattice.coords_of(p).to_float(), _sqrt(n)


def in_K(lat: Lattice, eps: float) -> bool:
    return gauss_reduce(lat).lambda1 + TOL_GEOM >= eps


def in_F(g: Grid, eps: float) -> bool:
    return shortest_grid_vector(g)[1] + TOL_GEOM >= eps


def project(g: Grid) -> Lattice:
    return g.lattice


def lattice_coefficients(lat: Lattice, a: Vec2) -> tuple[int, int]:
    """Integer coordinates of a lattice vector in the stored basis."""
    c = lat.basis.to_float().inverse() @ a.to_float()
    ints = (round(c.v1), round(c.v2))
    for x, k in zip((c.v1, c.v2), ints):
        if abs(x - k) > TOL_GEOM * max(1.0, abs(x)) * 1e3:
            raise NotPrimitive(f"{a} is not a lattice vector")
    return ints


def _ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    if b == 0:
        return (abs(a), (1 if a >= 0 else -1), 0)
    g, x, y = _ext_gcd(b, a % b)
    return g, y, x - (a // b) * y


def complete_basis(lat: Lattice, a: Vec2):
    """Integer coordinates (i, j), (k, l) of a and of a completing b, i*l - j*k = 1."""
    i, j = lattice_coefficients(lat, a)
    g, x, y = _ext_gcd(i, j)
    if g != 1:
        raise NotPrimitive(f"{a} is not primitive (gcd {g})")
    # i*x + j*y = 1  ->  b = (-y, x) gives i*x - j*(-y) = 1
    return (i, j), (-y, x)


def dist_to_line_family(g: Grid, a: Vec2) -> float:
    """Distance from the grid to the union of lines Lambda + R a."""
    return line_distance(g, lattice_coefficients(g.lattice, a))


def line_distance(g: Grid, coeffs: tuple[int, int]) -> float:
    """As dist_to_line_family, for the vector with integer coordinates ``coeffs``."""
    lat = g.lattice
    i, j = coeffs
    gcd, x, y = _ext_gcd(i, j)
    if gcd != 1:
        raise NotPrimitive(f"{coeffs} is not primitive (gcd {gcd})")
    k, l = -y, x
    p = lat.pre_basis
    pa = (i * p.m11 + j * p.m12, i * p.m21 + j * p.m22)
    pb = (k * p.m11 + l * p.m12, k * p.m21 + l * p.m22)
    _, tau = _solve(pa, pb, g.pre_translation)
    frac = tau - math.floor(tau)
    d = min(frac, 1 - frac)
    area = abs(float(p.det()))
    return float(d) * area / _sqrt(lat.norm2(pa))


def distortion_bounds(m: Mat2) -> tuple[float, float]:
    """(1/||A||, ||A||): brackets |Ay - Ax| / |y - x| for unimodular A."""
    smin, smax = m.singular_values()
    return smin, smax


def format_grid(g: Grid) -> list[str]:
    b = g.lattice.basis.to_float()
    r = g.translation.to_float()
    return [repr(x) for x in (b.m11, b.m12, b.m21, b.m22, r.v1, r.v2)]


def parse_grid(fields: list[str]) -> Grid:
    vals = [float(f) for f in fields]
    return Grid(Lattice(Mat2(*vals[:4])), Vec2(vals[4], vals[5]))
