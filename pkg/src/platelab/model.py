"""Geometry, damping region, hinged-plate sine basis and operator assembly.

The domain is an interval (0, L) or a rectangle (0, Lx) x (0, Ly).  With
hinged boundary conditions (u = lap u = 0 on the boundary) the square of the
Dirichlet Laplacian is diagonal in the sine basis, so the plate operator and
the damping coupling are assembled exactly:

    lam_m  = Dirichlet Laplacian eigenvalue of mode m
    D_mn   = d * int_omega grad(phi_m) . grad(phi_n)     (closed form)
    Ahat   = [[0, Lam], [-Lam, -D]]                      (energy coordinates)

Energy coordinates are z = (Lam u, v); in them the natural plate energy is
E = ||z||^2 / 2 and Re <Ahat z, z> = -v^H D v, so contraction and resolvent
norms are plain Euclidean statements.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigurationError

__all__ = [
    "Geometry",
    "DampingRegion",
    "ModalBasis",
    "ModalOperators",
    "State",
    "PlateModel",
    "laplacian_eigenpairs",
    "assemble_damping",
    "assemble_generator",
    "assemble_operators",
    "build_model",
    "energy",
    "evaluate_field",
    "state_to_energy",
    "energy_to_state",
]

FIELD_ORDERS = ("value", "gradient", "laplacian", "grad_laplacian")


@dataclass(frozen=True)
class Geometry:
    """Open interval (0, L) or open rectangle (0, Lx) x (0, Ly)."""

    dim: int
    lengths: tuple[float, ...]

    def __post_init__(self):
        if self.dim not in (1, 2):
            raise ConfigurationError(f"dim must be 1 or 2, got {self.dim}")
        object.__setattr__(self, "lengths", tuple(float(l) for l in self.lengths))
        if len(self.lengths) != self.dim:
            raise ConfigurationError(
                f"expected {self.dim} length(s), got {len(self.lengths)}")
        if any(l <= 0.0 for l in self.lengths):
            raise ConfigurationError(f"lengths must be positive, got {self.lengths}")

    @property
    def length_x(self) -> float:
        return self.lengths[0]

    def contains(self, points: np.ndarray) -> np.ndarray:
        """True for points inside the closed domain. points: (n,) in 1D, (n, dim) else."""
        pts = np.atleast_2d(np.asarray(points, dtype=float).reshape(-1, self.dim))
        ok = np.ones(pts.shape[0], dtype=bool)
        for j, l in enumerate(self.lengths):
            ok &= (pts[:, j] >= 0.0) & (pts[:, j] <= l)
        return ok


@dataclass(frozen=True)
class DampingRegion:
    """Boundary-touching damping region omega = (0, ell) or (0, ell) x (0, Ly).

    ell == 0 means no damping region, ell == Lx means omega is the whole
    domain (no interface).  The transmission interface sits at x = ell.
    """

    d: float
    ell: float

    def __post_init__(self):
        if self.d < 0.0:
            raise ConfigurationError(f"damping coefficient d must be >= 0, got {self.d}")
        if self.ell < 0.0:
            raise ConfigurationError(f"region extent ell must be >= 0, got {self.ell}")

    def validate_against(self, geometry: Geometry) -> None:
        if self.ell > geometry.length_x:
            raise ConfigurationError(
                f"damping region ell={self.ell} exceeds domain length {geometry.length_x}")

    def is_empty(self) -> bool:
        return self.ell == 0.0 or self.d == 0.0

    def is_full(self, geometry: Geometry) -> bool:
        return self.ell == geometry.length_x

    def interface_x(self, geometry: Geometry) -> float:
        """x-coordinate of the interface I; requires a strict subregion."""
        if self.ell <= 0.0 or self.ell >= geometry.length_x:
            raise ConfigurationError(
                "interface requires 0 < ell < Lx (omega strictly contained)")
        return self.ell


@dataclass(frozen=True)
class ModalBasis:
    """First n_modes Dirichlet sine eigenpairs, sorted by eigenvalue.

    indices holds the 1-based sine indices: shape (N, 1) in 1D, (N, 2) in
    2D with eigenvalue ties broken lexicographically by (m, n).
    """

    geometry: Geometry
    n_modes: int
    indices: np.ndarray
    lam: np.ndarray

    @property
    def lam_sq(self) -> np.ndarray:
        return self.lam ** 2


def laplacian_eigenpairs(geometry: Geometry, n_modes: int) -> ModalBasis:
    """Assemble the n_modes smallest Dirichlet-Laplacian eigenpairs.

    1D: lam_m = (m pi / L)^2 with phi_m = sqrt(2/L) sin(m pi x / L).
    2D: lam_{mn} = (m pi / Lx)^2 + (n pi / Ly)^2, tensor-product sines.
    """
    if n_modes < 1:
        raise ConfigurationError(f"n_modes must be >= 1, got {n_modes}")
    if geometry.dim == 1:
        (L,) = geometry.lengths
        m = np.arange(1, n_modes + 1)
        lam = (m * np.pi / L) ** 2
        return ModalBasis(geometry, n_modes, m.reshape(-1, 1), lam)

    Lx, Ly = geometry.lengths
    # Enlarge the (m, n) candidate box until the N-th smallest eigenvalue
    # inside it is below everything outside it.
    k = int(np.ceil(np.sqrt(n_modes))) + 2
    while True:
        m = np.arange(1, k + 1)
        lx = (m * np.pi / Lx) ** 2
        ly = (m * np.pi / Ly) ** 2
        lam_grid = lx[:, None] + ly[None, :]
        pairs = [(lam_grid[i, j], i + 1, j + 1) for i in range(k) for j in range(k)]
        pairs.sort()
        # smallest eigenvalue with an index outside the k x k box
        outside = min(((k + 1) * np.pi / Lx) ** 2 + (np.pi / Ly) ** 2,
                      (np.pi / Lx) ** 2 + ((k + 1) * np.pi / Ly) ** 2)
        if len(pairs) >= n_modes and pairs[n_modes - 1][0] <= outside:
            break
        k += 2
    chosen = pairs[:n_modes]
    indices = np.array([(p[1], p[2]) for p in chosen], dtype=int)
    lam = np.array([p[0] for p in chosen])
    return ModalBasis(geometry, n_modes, indices, lam)


def _sin_sin_table(wavenumbers: np.ndarray, ell: float) -> np.ndarray:
    """int_0^ell sin(a_m x) sin(a_p x) dx for all mode pairs."""
    a = wavenumbers
    A, B = a[:, None], a[None, :]
    diag = np.eye(a.size, dtype=bool)
    diff = np.where(diag, 1.0, A - B)
    off = np.sin((A - B) * ell) / (2.0 * diff) - np.sin((A + B) * ell) / (2.0 * (A + B))
    on = ell / 2.0 - np.sin(2.0 * a * ell) / (4.0 * a)
    return np.where(diag, on[:, None], off)


def _cos_cos_table(wavenumbers: np.ndarray, ell: float) -> np.ndarray:
    """int_0^ell cos(a_m x) cos(a_p x) dx for all mode pairs."""
    a = wavenumbers
    A, B = a[:, None], a[None, :]
    diag = np.eye(a.size, dtype=bool)
    diff = np.where(diag, 1.0, A - B)
    off = np.sin((A - B) * ell) / (2.0 * diff) + np.sin((A + B) * ell) / (2.0 * (A + B))
    on = ell / 2.0 + np.sin(2.0 * a * ell) / (4.0 * a)
    return np.where(diag, on[:, None], off)


def assemble_damping(basis: ModalBasis, region: DampingRegion) -> np.ndarray:
    """Damping Gram matrix D_mn = d int_omega grad(phi_m) . grad(phi_n) dx.

    Closed-form sine/cosine antiderivatives over the subinterval or strip;
    the full-region and empty-region limits collapse to d diag(lam) and 0.
    In 2D the y-integrals run over all of (0, Ly), so entries carry a
    Kronecker delta in the y-index and only x-integrals remain.
    """
    geo = basis.geometry
    region.validate_against(geo)
    n = basis.n_modes
    if region.is_empty():
        return np.zeros((n, n))
    if region.is_full(geo):
        return region.d * np.diag(basis.lam)

    if geo.dim == 1:
        (L,) = geo.lengths
        m = basis.indices[:, 0]
        a = m * np.pi / L
        cc = _cos_cos_table(a, region.ell)
        return region.d * (2.0 / L) * (a[:, None] * a[None, :]) * cc

    Lx, Ly = geo.lengths
    mx = basis.indices[:, 0]
    my = basis.indices[:, 1]
    # distinct x-indices appearing in the basis
    ax = mx * np.pi / Lx
    lam_y = (my * np.pi / Ly) ** 2
    cc = _cos_cos_table(ax, region.ell)          # int X'_m X'_p needs the a-factors below
    ss = _sin_sin_table(ax, region.ell)
    grad_x = (2.0 / Lx) * (ax[:, None] * ax[None, :]) * cc
    mass_x = (2.0 / Lx) * ss
    same_y = (my[:, None] == my[None, :])
    D = region.d * np.where(same_y, grad_x + lam_y[:, None] * mass_x, 0.0)
    return D


@dataclass(frozen=True)
class ModalOperators:
    """Diagonal plate eigenvalues and the damping Gram matrix."""

    lam: np.ndarray
    D: np.ndarray

    def __post_init__(self):
        if self.D.shape != (self.lam.size, self.lam.size):
            raise ConfigurationError(
                f"dimension mismatch: lam has {self.lam.size} modes, D is {self.D.shape}")

    @property
    def n_modes(self) -> int:
        return self.lam.size


def assemble_generator(operators: ModalOperators) -> np.ndarray:
    """Generator in energy coordinates: Ahat = [[0, Lam], [-Lam, -D]].

    Acts on z = (Lam u, v); Ahat + Ahat^T = [[0, 0], [0, -2D]], the discrete
    dissipativity structure.
    """
    n = operators.n_modes
    lam_diag = np.diag(operators.lam)
    top = np.hstack([np.zeros((n, n)), lam_diag])
    bottom = np.hstack([-lam_diag, -operators.D])
    return np.vstack([top, bottom])


def assemble_operators(basis: ModalBasis, region: DampingRegion) -> ModalOperators:
    return ModalOperators(lam=basis.lam, D=assemble_damping(basis, region))


@dataclass(frozen=True)
class State:
    """Modal coefficient pair: u(x) = sum u_m phi_m(x), v = du/dt."""

    u: np.ndarray
    v: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "u", np.asarray(self.u))
        object.__setattr__(self, "v", np.asarray(self.v))
        if self.u.shape != self.v.shape or self.u.ndim != 1:
            raise ConfigurationError(
                f"u and v must be 1-d vectors of equal length, got {self.u.shape}, {self.v.shape}")
        if not (np.all(np.isfinite(self.u)) and np.all(np.isfinite(self.v))):
            raise ConfigurationError("state coefficients must be finite")

    @property
    def n_modes(self) -> int:
        return self.u.size


@dataclass(frozen=True)
class PlateModel:
    """Immutable bundle: geometry, damping region, basis and operators."""

    geometry: Geometry
    region: DampingRegion
    basis: ModalBasis
    operators: ModalOperators
    ahat: np.ndarray = field(repr=False)

    @property
    def n_modes(self) -> int:
        return self.basis.n_modes

    @property
    def lam(self) -> np.ndarray:
        return self.basis.lam

    @property
    def D(self) -> np.ndarray:
        return self.operators.D


def build_model(geometry: Geometry, region: DampingRegion, n_modes: int) -> PlateModel:
    basis = laplacian_eigenpairs(geometry, n_modes)
    ops = assemble_operators(basis, region)
    return PlateModel(geometry, region, basis, ops, assemble_generator(ops))


def energy(state: State, basis: ModalBasis) -> float:
    """Plate energy E = (sum lam_m^2 |u_m|^2 + sum |v_m|^2) / 2."""
    if state.n_modes != basis.n_modes:
        raise ConfigurationError(
            f"state has {state.n_modes} modes, basis has {basis.n_modes}")
    xi = basis.lam * state.u
    return 0.5 * float(np.vdot(xi, xi).real + np.vdot(state.v, state.v).real)


def state_to_energy(state: State, basis: ModalBasis) -> np.ndarray:
    """Energy-coordinate vector z = (Lam u, v), length 2N."""
    return np.concatenate([basis.lam * state.u, state.v])


def energy_to_state(z: np.ndarray, basis: ModalBasis) -> State:
    n = basis.n_modes
    return State(u=z[:n] / basis.lam, v=z[n:])


def _eval_matrix_1d(basis: ModalBasis, x: np.ndarray, order: str) -> np.ndarray:
    (L,) = basis.geometry.lengths
    m = basis.indices[:, 0]
    a = m * np.pi / L
    norm = np.sqrt(2.0 / L)
    arg = np.outer(x, a)
    if order == "value":
        return norm * np.sin(arg)
    if order == "gradient":
        return norm * a[None, :] * np.cos(arg)
    if order == "laplacian":
        return -norm * (a ** 2)[None, :] * np.sin(arg)
    if order == "grad_laplacian":
        return -norm * (a ** 3)[None, :] * np.cos(arg)
    raise ConfigurationError(f"unknown derivative order {order!r}")


def evaluate_field(coeffs: np.ndarray, basis: ModalBasis, points: np.ndarray,
                   order: str = "value") -> np.ndarray:
    """Evaluate sum_m c_m phi_m (or an analytic derivative) at sample points.

    order is one of 'value', 'gradient', 'laplacian', 'grad_laplacian'.
    Scalar orders return shape (n_pts,); vector orders return (n_pts, dim).
    Derivatives are exact sine/cosine evaluations, never finite differences.
    """
    if order not in FIELD_ORDERS:
        raise ConfigurationError(
            f"derivative order must be one of {FIELD_ORDERS}, got {order!r}")
    coeffs = np.asarray(coeffs)
    if coeffs.shape != (basis.n_modes,):
        raise ConfigurationError(
            f"expected {basis.n_modes} coefficients, got shape {coeffs.shape}")
    geo = basis.geometry
    pts = np.asarray(points, dtype=float)
    if geo.dim == 1:
        x = pts.reshape(-1)
        if not np.all(geo.contains(x)):
            raise ConfigurationError("grid points outside the closed domain")
        if order in ("value", "laplacian"):
            return _eval_matrix_1d(basis, x, order) @ coeffs
        return (_eval_matrix_1d(basis, x, order) @ coeffs)[:, None]

    pts = pts.reshape(-1, 2)
    if not np.all(geo.contains(pts)):
        raise ConfigurationError("grid points outside the closed domain")
    Lx, Ly = geo.lengths
    ax = basis.indices[:, 0] * np.pi / Lx
    ay = basis.indices[:, 1] * np.pi / Ly
    norm = np.sqrt(4.0 / (Lx * Ly))
    sx = np.sin(np.outer(pts[:, 0], ax))
    cx = np.cos(np.outer(pts[:, 0], ax))
    sy = np.sin(np.outer(pts[:, 1], ay))
    cy = np.cos(np.outer(pts[:, 1], ay))
    if order == "value":
        return norm * (sx * sy) @ coeffs
    if order == "laplacian":
        return norm * (sx * sy) @ (-basis.lam * coeffs)
    if order == "gradient":
        gx = norm * (cx * sy) @ (ax * coeffs)
        gy = norm * (sx * cy) @ (ay * coeffs)
        return np.stack([gx, gy], axis=1)
    gx = norm * (cx * sy) @ (-basis.lam * ax * coeffs)
    gy = norm * (sx * cy) @ (-basis.lam * ay * coeffs)
    return np.stack([gx, gy], axis=1)
