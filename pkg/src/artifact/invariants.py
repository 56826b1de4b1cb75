"""Modified traces and the link invariants built from them.

Partial traces are right quantum traces: the last tensor factor is
contracted after multiplying by the pivot on that factor.  The pivots are
K^-1 on modules of the quantum group, K on the mirror category (modules of
the co-opposite algebra, here the duals V*), and K^-1 (x) K on the doubled
factors V (x) V*.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from itertools import combinations
from typing import Literal, Sequence

import numpy as np
from scipy.optimize import least_squares

from .braids import (
    BraidWord,
    act_colors_sl2,
    closure_components,
    stabilize_nonsingular,
    total_holonomy,
    writhe,
)
from .braiding import functor_F, functor_Fbar, functor_T, word_evaluable
from .burau import is_closure, torsion
from .errors import ClosureError, InadmissibleError, SingularError, SolverError
from .holonomy import (
    ExtChar,
    default_mu,
    factorize_tuple,
    find_admissible_gauge,
    gauge_transform,
    random_sl2,
    require_nonsingular_meridians,
)
from .numerics import (
    DEFAULT_TOL,
    Matrix,
    as_matrix,
    det,
    identity,
    intertwiner_system,
    inv,
    kron,
    kron_all,
    unvec,
)
from .uqi import Rep, dual_module, p0_module, simple_module, tensor_rep

Category = Literal["C", "Cbar"]

SCALAR_THRESHOLD = 1e-7

# multiple of iota : 1 -> P0, 1 -> z, used as the socle generator of the trace tuple
TRACE_TUPLE_IOTA = 0.5


def ptr_right(f: Matrix, factor_dims: Sequence[int], pivot_images: Sequence[Matrix]) -> Matrix:
    """Right partial quantum trace over the last ``len(pivot_images)`` factors.

    ``pivot_images[k]`` is the pivot on factor ``len(factor_dims) - len(pivot_images) + k``.
    """
    f = as_matrix(f)
    dims = list(factor_dims)
    total = int(np.prod(dims)) if dims else 1
    if f.shape != (total, total):
        raise ValueError(f"matrix of shape {f.shape} does not act on factors {dims}")
    if len(pivot_images) > len(dims):
        raise ValueError("more pivots than factors")
    for piv in reversed(list(pivot_images)):
        d = dims.pop()
        piv = as_matrix(piv)
        if piv.shape != (d, d):
            raise ValueError("pivot does not match factor dimension")
        rest = f.shape[0] // d
        g = (kron(identity(rest), piv) @ f).reshape(rest, d, rest, d)
        f = np.einsum("ikjk->ij", g)
    return f


def ptr_left(f: Matrix, factor_dims: Sequence[int], pivot: Matrix) -> Matrix:
    """Left partial quantum trace over the first factor, weighted by ``pivot``.

    For the right trace with pivot K^-1 the matching left trace uses K.
    """
    f = as_matrix(f)
    d = factor_dims[0]
    rest = f.shape[0] // d
    g = (f @ kron(as_matrix(pivot), identity(rest))).reshape(d, rest, d, rest)
    return np.einsum("kikj->ij", g)


def _scalar(f: Matrix, norm: float) -> complex:
    lam = complex(np.trace(f) / f.shape[0])
    residual = float(np.abs(f - lam * identity(f.shape[0])).max())
    if residual > SCALAR_THRESHOLD * max(norm, 1e-300):
        raise SolverError("trace not scalar: first factor not simple or f not equivariant")
    return lam


def simple_reps(xs: Sequence[ExtChar], category: Category = "C", tol: float = DEFAULT_TOL) -> list[Rep]:
    reps = [simple_module(x, tol) for x in xs]
    return reps if category == "C" else [dual_module(r) for r in reps]


def pivots(reps: Sequence[Rep], category: Category) -> list[Matrix]:
    return [r.Kinv if category == "C" else r.K for r in reps]


def mtrace_C(f: Matrix, xs: Sequence[ExtChar], tol: float = DEFAULT_TOL) -> complex:
    """Modified trace of an endomorphism of V(x_1) (x) ... (x) V(x_n)."""
    reps = simple_reps(xs, "C", tol)
    g = ptr_right(f, [2] * len(xs), pivots(reps, "C")[1:])
    return _scalar(g, float(np.abs(f).max())) / xs[0].omega


def mtrace_Cbar(f: Matrix, xs: Sequence[ExtChar], tol: float = DEFAULT_TOL) -> complex:
    """Modified trace in the mirror category on V(x_1)* (x) ... (x) V(x_n)*."""
    reps = simple_reps(xs, "Cbar", tol)
    g = ptr_right(f, [2] * len(xs), pivots(reps, "Cbar")[1:])
    return _scalar(g, float(np.abs(f).max())) / xs[0].omega


def doubled_pivot(x: ExtChar, dual_x: ExtChar | None = None, tol: float = DEFAULT_TOL) -> Matrix:
    """K^-1 (x) K on V(x) (x) V(dual_x)*."""
    dual_x = x if dual_x is None else dual_x
    return kron(simple_module(x, tol).Kinv, dual_module(simple_module(dual_x, tol)).K)


def mtrace_D(
    f: Matrix,
    xs: Sequence[ExtChar],
    dual_xs: Sequence[ExtChar] | None = None,
    tol: float = DEFAULT_TOL,
) -> complex:
    """Modified trace on (V_1 V_1*) (x) ... (x) (V_n V_n*).

    ``dual_xs`` labels the dual legs when they differ from ``xs`` (e.g. the
    mixed module V(chi, mu) (x) V(chi, -mu)*); the dimension of the first
    factor is 1/((mu - 1/mu)(mu' - 1/mu')).
    """
    dual_xs = list(xs) if dual_xs is None else list(dual_xs)
    pivs = [doubled_pivot(x, y, tol) for x, y in zip(xs, dual_xs)]
    g = ptr_right(f, [4] * len(xs), pivs[1:])
    return _scalar(g, float(np.abs(f).max())) / (xs[0].omega * dual_xs[0].omega)


def trace_lift(rep: Rep, variant: str = "delta", tol: float = DEFAULT_TOL) -> Matrix:
    """tau_V : V -> P0 (x) V with (pi (x) id) tau_V = id, pi the projection onto x."""
    p0 = p0_module()
    big = tensor_rep([p0, rep], variant)
    d = rep.dim
    system = intertwiner_system([rep.K, rep.E, rep.F], [big.K, big.E, big.F])
    # (pi (x) id) tau = id, written in the same column-major vectorization
    proj = kron(np.eye(4)[:1], identity(d))
    normal = np.kron(identity(d), proj)
    rows = np.vstack([system, normal])
    rhs = np.concatenate([np.zeros(system.shape[0]), identity(d).reshape(-1, order="F")])
    sol, *_ = np.linalg.lstsq(rows, rhs, rcond=None)
    residual = float(np.abs(rows @ sol - rhs).max())
    if residual > 1e-8 * max(1.0, float(np.abs(rows).max())):
        raise SolverError("lift through the projective cover failed")
    return unvec(sol, 4 * d, d)


def mtrace_via_trace_tuple(
    f: Matrix, xs: Sequence[ExtChar], category: Category = "C", tol: float = DEFAULT_TOL
) -> complex:
    """Modified trace from the trace tuple (P0, iota / 2, pi), iota(1) = z.

    The lift of the first factor through P0 is tensored with the identity
    on the rest; the right trace over everything lands in the socle of P0.
    On id_V that trace is z / (2 omega), so the socle generator iota / 2
    reproduces the dimension 1/omega.
    """
    reps = simple_reps(xs, category, tol)
    variant = "delta" if category == "C" else "op"
    tau = trace_lift(reps[0], variant, tol)
    rest = int(np.prod([r.dim for r in reps[1:]])) if len(reps) > 1 else 1
    lifted = kron(tau, identity(rest)) @ as_matrix(f)  # X -> P0 (x) X
    piv = kron_all(pivots(reps, category))
    dim_x = piv.shape[0]
    g = (kron(identity(4), piv) @ lifted).reshape(4, dim_x, dim_x)
    vec = np.einsum("pxx->p", g)
    off = float(np.abs(vec[:3]).max())
    if off > SCALAR_THRESHOLD * max(float(np.abs(f).max()), 1e-300) * max(1.0, float(np.abs(tau).max())):
        raise SolverError("trace not scalar: first factor not simple or f not equivariant")
    return complex(vec[3] / TRACE_TUPLE_IOTA)


def str_exterior_oracle(a: Matrix) -> complex:
    """Supertrace of the induced map on the exterior algebra (degree k has parity k).

    Built from the full matrix of minors on all 2^N basis wedges; test use only.
    """
    a = as_matrix(a)
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError("square matrix required")
    if n > 12:
        raise ValueError("exterior algebra oracle refuses N > 12")
    subsets = [s for k in range(n + 1) for s in combinations(range(n), k)]
    index = {s: i for i, s in enumerate(subsets)}
    lam = np.zeros((len(subsets), len(subsets)), dtype=complex)
    for s in subsets:
        for t in subsets:
            if len(s) == len(t):
                lam[index[t], index[s]] = det(a[np.ix_(t, s)]) if s else 1.0
    signs = np.array([(-1) ** len(s) for s in subsets])
    return complex(np.sum(signs * np.diag(lam)))


# link pipeline ---------------------------------------------------------------


@dataclass
class LinkSpec:
    """A colored braid closure: word, SL2 colors per strand, optional mu per component."""

    word: BraidWord
    colors: list[Matrix]
    mu: list[complex] | None = None
    tol: float = DEFAULT_TOL
    seed: int = 0
    gauge: Literal["auto", "off"] = "auto"
    stabilize: Literal["auto", "off"] = "auto"

    def __post_init__(self) -> None:
        self.colors = [as_matrix(g) for g in self.colors]
        if len(self.colors) != self.word.strands:
            raise ValueError(f"expected {self.word.strands} colors, got {len(self.colors)}")
        if self.mu is not None:
            self.mu = [complex(m) for m in self.mu]
            if len(self.mu) != len(closure_components(self.word)):
                raise ValueError("need one mu per link component")


@dataclass
class PreparedLink:
    """A link brought into the form the functors need."""

    word: BraidWord
    colors: list[Matrix]
    xs: list[ExtChar]
    gauge: Matrix
    stabilizations: int
    mu: list[complex]


def _validate_mu(mu: complex, chi_casimir: complex, tol: float) -> None:
    if abs((mu - 1 / mu) ** 2 - chi_casimir) > 1e-6 * max(1.0, abs(chi_casimir)):
        raise ValueError("mu is not a fractional eigenvalue of its component")


def prepare(link: LinkSpec) -> PreparedLink:
    """Validate, stabilize, gauge and factorize a link; assign mu per component."""
    tol = link.tol
    word, colors = link.word, list(link.colors)
    if not is_closure(word, colors, max(1e-8, tol)):
        raise ClosureError("not a colored closure")
    require_nonsingular_meridians(colors, tol)
    strands_before = word.strands
    h = total_holonomy(colors)
    if abs(np.trace(h) - 2) <= tol:
        if link.stabilize == "off":
            raise SingularError("singular total holonomy")
        word, colors = stabilize_nonsingular(word, colors, tol)
    gauge = identity(2)

    def evaluable(gs: list[Matrix]) -> bool:
        try:
            chars = factorize_tuple(gs, 10 * tol)
        except InadmissibleError:
            return False
        return word_evaluable(word, [ExtChar(a, default_mu(a)) for a in chars], 10 * tol)

    if not evaluable(colors):
        if link.gauge == "off":
            raise InadmissibleError("inadmissible tuple")
        gauge = find_admissible_gauge(colors, link.seed, tol, accept=evaluable)
        colors = gauge_transform(colors, gauge)
    chars = factorize_tuple(colors, 10 * tol)
    comps = closure_components(word)
    given = link.mu
    mus: list[complex] = []
    strand_mu: dict[int, complex] = {}
    for k, comp in enumerate(comps):
        first = chars[comp[0] - 1]
        # stabilization adds a strand to an existing component, so the count is unchanged
        mu = given[k] if given is not None else default_mu(first)
        _validate_mu(mu, first.casimir_square(), tol)
        mus.append(mu)
        for j in comp:
            strand_mu[j] = mu
    xs = [ExtChar(a, strand_mu[j + 1]) for j, a in enumerate(chars)]
    for x in xs:
        if not x.is_nonsingular(tol):
            raise SingularError("singular meridian")
    return PreparedLink(word, colors, xs, gauge, word.strands - strands_before, mus)


def invariant_torsion(link: LinkSpec) -> complex:
    p = prepare(link)
    return torsion(p.word, p.colors, auto_stabilize=False, tol=link.tol)


def invariant_T(link: LinkSpec) -> complex:
    p = prepare(link)
    return mtrace_D(functor_T(p.word, p.xs, link.tol), p.xs, tol=link.tol)


def phase_class(z: complex) -> float:
    """Argument of z modulo pi/2, in [0, pi/2): the class of z in C*/<i>."""
    return float(np.mod(np.angle(z), np.pi / 2))


def invariant_F_value(link: LinkSpec) -> complex:
    """A representative of F; only its class modulo powers of i is meaningful."""
    p = prepare(link)
    return mtrace_C(functor_F(p.word, p.xs, link.tol), p.xs, link.tol)


def invariant_Fbar_value(link: LinkSpec) -> complex:
    p = prepare(link)
    return mtrace_Cbar(functor_Fbar(p.word, p.xs, link.tol), p.xs, link.tol)


def invariant_F(link: LinkSpec) -> tuple[float, float]:
    value = invariant_F_value(link)
    return abs(value), phase_class(value)


def invariant_K_value(link: LinkSpec) -> complex:
    f, fbar = invariant_F_value(link), invariant_Fbar_value(link)
    if abs(f * fbar) == 0:
        raise SingularError("F vanishes, so K is undefined")
    return invariant_T(link) / (f * fbar)


def invariant_K(link: LinkSpec) -> tuple[float, float]:
    value = invariant_K_value(link)
    return abs(value), phase_class(value)


@dataclass
class InvariantReport:
    torsion: complex | None = None
    T: complex | None = None
    F_modulus: float | None = None
    F_phase_class: float | None = None
    K_modulus: float | None = None
    K_phase_class: float | None = None
    diagnostics: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return asdict(self)


def compute_report(link: LinkSpec, which: str = "all") -> InvariantReport:
    wanted = {"torsion", "T", "F", "K"} if which == "all" else {which}
    p = prepare(link)
    report = InvariantReport()
    report.diagnostics = {
        "strands": p.word.strands,
        "stabilizations": p.stabilizations,
        "gauge": p.gauge,
        "mu": p.mu,
        "writhe": writhe(p.word),
    }
    if "torsion" in wanted:
        report.torsion = torsion(p.word, p.colors, auto_stabilize=False, tol=link.tol)
    if "T" in wanted or "K" in wanted:
        report.T = mtrace_D(functor_T(p.word, p.xs, link.tol), p.xs, tol=link.tol)
    if "F" in wanted or "K" in wanted:
        f = mtrace_C(functor_F(p.word, p.xs, link.tol), p.xs, link.tol)
        report.F_modulus, report.F_phase_class = abs(f), phase_class(f)
        if "K" in wanted:
            fbar = mtrace_Cbar(functor_Fbar(p.word, p.xs, link.tol), p.xs, link.tol)
            k = report.T / (f * fbar)
            report.K_modulus, report.K_phase_class = abs(k), phase_class(k)
            if "T" not in wanted and which != "all":
                report.T = None
    if report.T is not None and report.torsion is not None:
        report.diagnostics["relative_deviation"] = abs(abs(report.T) - abs(report.torsion)) / abs(report.torsion)
    return report


def worker_count() -> int:
    try:
        return max(1, int(os.environ.get("HOLOTOR_THREADS", "1")))
    except ValueError:
        return 1


def _trial(link: LinkSpec, seed: np.random.SeedSequence) -> tuple[complex, complex]:
    rng = np.random.default_rng(seed)
    c = random_sl2(rng)
    colors = gauge_transform(link.colors, c)
    moved = LinkSpec(link.word, colors, None, link.tol, int(rng.integers(2**31)), "auto", link.stabilize)
    p = prepare(moved)
    # random fractional eigenvalue per component among the four roots
    flips = {}
    for comp in closure_components(p.word):
        mu = p.xs[comp[0] - 1].mu
        choice = [mu, -mu, 1 / mu, -1 / mu][int(rng.integers(4))]
        flips.update({j: choice for j in comp})
    xs = [x.with_mu(flips[j + 1]) for j, x in enumerate(p.xs)]
    t_value = mtrace_D(functor_T(p.word, xs, link.tol), xs, tol=link.tol)
    tau = torsion(p.word, p.colors, auto_stabilize=False, tol=link.tol)
    return t_value, tau


def verify_theorem(link: LinkSpec, trials: int = 5, seed: int = 0) -> dict:
    """Compare T and torsion over random gauges and fractional eigenvalues."""
    seeds = np.random.SeedSequence(seed).spawn(trials)
    with ThreadPoolExecutor(max_workers=worker_count()) as pool:
        results = list(pool.map(lambda s: _trial(link, s), seeds))
    deviations = [abs(abs(t) - abs(tau)) / abs(tau) for t, tau in results]
    signs = [int(np.sign((t / tau).real)) for t, tau in results]
    sign_error = max(abs(t - s * tau) / abs(tau) for (t, tau), s in zip(results, signs))
    return {
        "trials": trials,
        "max_relative_deviation": float(max(deviations)),
        "max_signed_error": float(sign_error),
        "signs": signs,
        "values": results,
    }


# sampling colorings ----------------------------------------------------------


def sample_closure_colors(
    word: BraidWord,
    rng: np.random.Generator,
    eigenvalues: Sequence[complex] | None = None,
    abelian: bool = False,
    attempts: int = 30,
) -> list[Matrix]:
    """Random SL2 colors fixed by ``word``, with prescribed meridian eigenvalue per component.

    Non-abelian colorings are found by least squares over conjugators; with
    ``abelian=True`` all colors are diagonal in one random basis.
    """
    n = word.strands
    comps = closure_components(word)
    comp_of = {j: k for k, comp in enumerate(comps) for j in comp}
    if eigenvalues is None:
        eigenvalues = [complex(1.5 + rng.random(), rng.normal() * 0.5) for _ in comps]
    diag = [np.diag([m, 1 / m]).astype(complex) for m in eigenvalues]

    if abelian:
        c = random_sl2(rng)
        return [c @ diag[comp_of[j + 1]] @ inv(c) for j in range(n)]

    def build(p: np.ndarray) -> list[Matrix]:
        z = p[: 4 * n] + 1j * p[4 * n :]
        out = []
        for j in range(n):
            m = z[4 * j : 4 * j + 4].reshape(2, 2)
            out.append(m @ diag[comp_of[j + 1]] @ inv(m))
        return out

    def residual(p: np.ndarray) -> np.ndarray:
        gs = build(p)
        moved = act_colors_sl2(word, gs)
        r = np.concatenate([(a - b).ravel() for a, b in zip(moved, gs)])
        return np.concatenate([r.real, r.imag])

    for _ in range(attempts):
        try:
            sol = least_squares(residual, rng.normal(size=8 * n), xtol=1e-15, ftol=1e-15, gtol=1e-15)
            gs = build(sol.x)
        except (np.linalg.LinAlgError, ArithmeticError, ValueError):
            # a conjugator went singular along the way; restart from a new point
            continue
        spread = max(float(np.abs(a @ b - b @ a).max()) for a in gs for b in gs)
        scale = max(float(np.abs(g).max()) for g in gs)
        if np.abs(residual(sol.x)).max() < 1e-12 * scale**2 and spread > 1e-3 and scale < 1e3:
            return gs
    raise SolverError("no non-abelian closure coloring found")
