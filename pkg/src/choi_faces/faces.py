"""Faces of the separable cone touched by family states.

A PPT state A exposes the face of separable states whose product vectors
x (x) y satisfy two range conditions at once: x (x) y in R(A) and
conj(x) (x) y in R(A^Gamma).  This module builds the projector pair, tests
product vectors against it, enumerates the known product-vector families on
the distinguished boundary elements, and runs randomized checks that the
explicit decompositions really can (or provably cannot) start from an
arbitrary member of those families.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, NamedTuple

import numpy as np

from . import classifier, decomposer, linalg, maps
from .errors import (
    DegenerateVectorError,
    NotPositiveMapError,
    NotPPTError,
    OutOfRangeError,
    UnsupportedElementError,
)
from .states import build_state, partial_transpose


class FacePair(NamedTuple):
    """Range projectors of A and of A^Gamma."""

    d: np.ndarray
    e: np.ndarray


class KernelFixtures(NamedTuple):
    """Hand-written kernel bases, one column per kernel vector."""

    state: np.ndarray
    gamma: np.ndarray


@dataclass(frozen=True)
class QFamily:
    """Product-vector family of one boundary element.

    make builds a member from family coordinates; sample draws a random
    member using a numpy Generator.
    """

    tag: str
    description: str
    make: Callable
    sample: Callable


@dataclass(frozen=True)
class ThroughCheckReport:
    """Outcome of the randomized through-decomposition check."""

    element: classifier.BoundaryElement
    samples: int
    passed: int
    constructive: bool
    max_residual: float
    note: str
    failures: tuple


def _as_state(state) -> np.ndarray:
    arr = np.asarray(state)
    if arr.ndim == 2:
        if arr.shape != (9, 9):
            raise OutOfRangeError(f"expected a 9x9 matrix, got {arr.shape}")
        return arr.astype(np.complex128)
    a, b, c = (float(v) for v in state)
    return build_state(a, b, c)


def face_of(state, tol: float | None = None) -> FacePair:
    """Projector pair (onto R(A), onto R(A^Gamma)) for a PPT state.

    state is either a parameter triple (a, b, c) or a 9x9 matrix.
    """
    mat = _as_state(state)
    t = classifier.default_tolerance() if tol is None else float(tol)
    gamma = partial_transpose(mat)
    if not (linalg.is_psd(mat, t) and linalg.is_psd(gamma, t)):
        raise NotPPTError("state is not PPT, so it exposes no face here")
    return FacePair(
        linalg.range_projector(mat, t), linalg.range_projector(gamma, t)
    )


def q_membership(z, state, tol: float = 1e-8, face: FacePair | None = None) -> bool:
    """Whether x (x) y lies in R(A) and conj(x) (x) y in R(A^Gamma).

    Distances are relative to the norm of x (x) y.  Pass a precomputed
    FacePair to skip the eigendecompositions.
    """
    if face is None:
        face = face_of(state)
    x = np.asarray(z[0], dtype=np.complex128).reshape(3)
    y = np.asarray(z[1], dtype=np.complex128).reshape(3)
    v = np.kron(x, y)
    nv = float(np.linalg.norm(v))
    if nv == 0.0:
        raise DegenerateVectorError("zero product vector")
    if float(np.linalg.norm(v - face.d @ v)) > tol * nv:
        return False
    vb = np.kron(np.conj(x), y)
    return float(np.linalg.norm(vb - face.e @ vb)) <= tol * nv


def q_f_test(z, tol: float = 1e-12) -> bool:
    """Whether the coordinate products x_i y_i all agree (face family)."""
    x = np.asarray(z[0], dtype=np.complex128).reshape(3)
    y = np.asarray(z[1], dtype=np.complex128).reshape(3)
    scale = float(np.abs(x).max() * np.abs(y).max())
    if scale == 0.0:
        return False
    p = x * y
    return float(
        max(abs(p[0] - p[1]), abs(p[1] - p[2]), abs(p[0] - p[2]))
    ) <= tol * scale


def dual_face_membership(z, mp, tol: float | None = None) -> bool:
    """Whether <Phi(x x*) conj(y), conj(y)> vanishes for the positive map.

    The threshold scales with the map weights and the product norms.
    """
    if not maps.is_positive_map(mp):
        raise NotPositiveMapError(f"map {tuple(mp)} is not positive")
    t = classifier.default_tolerance() if tol is None else float(tol)
    x = np.asarray(z[0], dtype=np.complex128).reshape(3)
    y = np.asarray(z[1], dtype=np.complex128).reshape(3)
    val = maps.pairing_product((x, y), mp)
    al, be, ga = (float(v) for v in mp)
    scale = max(
        1.0,
        (abs(al) + abs(be) + abs(ga))
        * float(np.vdot(x, x).real * np.vdot(y, y).real),
    )
    return abs(val) <= t * scale


def _make_v1(x) -> decomposer.ProductVector:
    xv = np.asarray(x, dtype=np.complex128).reshape(3)
    m = np.abs(xv)
    if m.max() == 0.0:
        raise DegenerateVectorError("x must be nonzero")
    if m.max() - m.min() > 1e-9 * m.max():
        raise OutOfRangeError("this family needs all |x_i| equal")
    return decomposer.ProductVector(np.conj(xv), xv.copy())


def _make_e1(x) -> decomposer.ProductVector:
    xv = np.asarray(x, dtype=np.complex128).reshape(3)
    if np.abs(xv).max() == 0.0:
        raise DegenerateVectorError("x must be nonzero")
    return decomposer.conj_pair(xv)


def _make_bb(b: float):
    def make(branch: int, u) -> decomposer.ProductVector:
        uv = np.asarray(u, dtype=np.complex128).reshape(2)
        if np.abs(uv).max() == 0.0:
            raise DegenerateVectorError("u must be nonzero")
        p, q = uv
        if branch == 1:
            return decomposer.product_vector(
                (0, np.conj(p), b * np.conj(q)), (0, p, q)
            )
        if branch == 2:
            return decomposer.product_vector(
                (b * np.conj(p), 0, np.conj(q)), (p, 0, q)
            )
        if branch == 3:
            return decomposer.product_vector(
                (np.conj(p), b * np.conj(q), 0), (p, q, 0)
            )
        raise OutOfRangeError(f"branch must be 1..3, got {branch}")

    return make


def _gauss_complex(rng, n: int) -> np.ndarray:
    return rng.standard_normal(n) + 1j * rng.standard_normal(n)


def q_family(element, b: float | None = None) -> QFamily:
    """The product-vector family of a supported boundary element.

    element is a BoundaryElement or a tag string; v_b and e_hat_b read b
    from the element params (or the keyword).
    """
    if isinstance(element, str):
        tag = element
        params = {}
    else:
        tag = element.tag
        params = dict(element.params)
    if b is not None:
        params.setdefault("b", float(b))
    if tag == classifier.TAG_V1:
        return QFamily(
            tag,
            "conj(x) (x) x with all three |x_i| equal",
            _make_v1,
            lambda rng: _make_v1(np.exp(1j * rng.uniform(0.0, 2.0 * math.pi, 3))),
        )
    if tag == classifier.TAG_E1:
        return QFamily(
            tag,
            "x (x) conj(x) for arbitrary nonzero x",
            _make_e1,
            lambda rng: _make_e1(_gauss_complex(rng, 3)),
        )
    if tag in (classifier.TAG_VB, classifier.TAG_EHAT_B):
        if "b" not in params:
            raise OutOfRangeError(f"the '{tag}' family needs the parameter b")
        bp = float(params["b"])
        if not (bp > 0.0):
            raise OutOfRangeError(f"b must be positive, got {bp}")
        make = _make_bb(bp)
        return QFamily(
            tag,
            "three branches (0, conj(u1), b conj(u2)) (x) (0, u1, u2) and "
            "its support shifts",
            make,
            lambda rng: make(int(rng.integers(1, 4)), _gauss_complex(rng, 2)),
        )
    if tag == classifier.TAG_F:
        return QFamily(
            tag,
            "seven branches with equal coordinate products x_i y_i",
            decomposer.f_vector,
            lambda rng: decomposer.f_vector(
                int(rng.integers(1, 8)), *_gauss_complex(rng, 2)
            ),
        )
    raise UnsupportedElementError(
        f"no product-vector family catalogued for '{tag}'"
    )


def kernel_fixtures(element, b: float | None = None) -> KernelFixtures:
    """Hand-written kernel bases of A and A^Gamma for v1 and v_b."""
    if isinstance(element, str):
        tag = element
        params = {}
    else:
        tag = element.tag
        params = dict(element.params)
    if b is not None:
        params.setdefault("b", float(b))
    if tag == classifier.TAG_V1:
        state = np.zeros((9, 2))
        state[0, 0], state[4, 0] = 1.0, -1.0
        state[4, 1], state[8, 1] = 1.0, -1.0
        gamma = np.zeros((9, 3))
        gamma[1, 0], gamma[3, 0] = 1.0, -1.0
        gamma[5, 1], gamma[7, 1] = 1.0, -1.0
        gamma[2, 2], gamma[6, 2] = -1.0, 1.0
        return KernelFixtures(state, gamma)
    if tag == classifier.TAG_VB:
        if "b" not in params:
            raise OutOfRangeError("the v_b fixtures need the parameter b")
        bp = float(params["b"])
        if not (bp > 0.0):
            raise OutOfRangeError(f"b must be positive, got {bp}")
        gamma = np.zeros((9, 3))
        gamma[1, 0], gamma[3, 0] = bp, -1.0
        gamma[5, 1], gamma[7, 1] = bp, -1.0
        gamma[2, 2], gamma[6, 2] = -1.0, bp
        return KernelFixtures(np.zeros((9, 0)), gamma)
    raise UnsupportedElementError(f"no kernel fixtures catalogued for '{tag}'")


def _direction_match(z, z0) -> bool:
    v = decomposer.embed(z)
    v0 = decomposer.embed(z0)
    ip = abs(np.vdot(v0, v)) ** 2
    return ip >= (1.0 - 1e-10) * float(np.vdot(v0, v0).real * np.vdot(v, v).real)


def _check_constructive(dec, z, label: str, failures: list) -> float:
    z0 = dec.terms[0][1]
    if not _direction_match(z, z0):
        failures.append(f"{label}: first term is not the sampled vector")
    if any(w <= 0.0 for w, _ in dec.terms):
        failures.append(f"{label}: nonpositive weight in decomposition")
    res = decomposer.residual(dec)
    if res > 1e-10:
        failures.append(f"{label}: residual {res:.3e} above 1e-10")
    return res


def through_decomposition_check(p, samples: int = 50, seed: int | None = None) -> ThroughCheckReport:
    """Randomized check that decompositions can start at any family member.

    For v1, e1, e_hat_b and f targets, each sampled family member is fed to
    its through_* construction; the first term must be that member, every
    weight positive, and the reconstruction exact.  For v_b the check is
    the opposite: generic family members fail the dual-face test against
    the map with zero pairing on the target, so only members obeying the
    modulus relation could ever start a decomposition.  Other boundary
    elements are unsupported.
    """
    if samples < 1:
        raise OutOfRangeError(f"need at least one sample, got {samples}")
    a, b, c = (float(v) for v in p)
    el = classifier.boundary_element((a, b, c))
    rng = np.random.default_rng(seed)
    failures: list = []
    max_res = 0.0
    tag = el.tag
    if tag == classifier.TAG_V1:
        for k in range(samples):
            x = np.exp(1j * rng.uniform(0.0, 2.0 * math.pi, 3))
            z = decomposer.ProductVector(np.conj(x), x.copy())
            dec = decomposer.decompose_through_v1(x[1] / x[0], x[2] / x[0])
            max_res = max(max_res, _check_constructive(dec, z, f"sample {k}", failures))
        note = "every equal-modulus member starts an exact nine-term decomposition"
    elif tag == classifier.TAG_E1:
        for k in range(samples):
            x = _gauss_complex(rng, 3)
            z = decomposer.conj_pair(x)
            dec = decomposer.decompose_through_e1(a, x)
            max_res = max(max_res, _check_constructive(dec, z, f"sample {k}", failures))
        note = "every member x (x) conj(x) starts an exact decomposition"
    elif tag == classifier.TAG_EHAT_B:
        bp = float(el.params["b"])
        make = _make_bb(bp)
        for k in range(samples):
            branch = int(rng.integers(1, 4))
            u = _gauss_complex(rng, 2)
            z = make(branch, u)
            alpha = (u[1] / u[0], u[0] / u[1], u[1] / u[0])[branch - 1]
            dec = decomposer.decompose_through_e_hat_b(a, bp, alpha, branch)
            max_res = max(max_res, _check_constructive(dec, z, f"sample {k}", failures))
        note = "every family member starts an exact decomposition"
    elif tag == classifier.TAG_F:
        for k in range(samples):
            branch = int(rng.integers(1, 8))
            s, t = _gauss_complex(rng, 2)
            z = decomposer.f_vector(branch, s, t)
            dec = decomposer.decompose_through_f(b, c, z)
            max_res = max(max_res, _check_constructive(dec, z, f"sample {k}", failures))
        note = "every member of the seven-branch family starts an exact decomposition"
    elif tag == classifier.TAG_VB:
        bp = float(el.params["b"])
        make = _make_bb(bp)
        mp = maps.phi_t(1.0 / bp)
        for k in range(samples):
            branch = int(rng.integers(1, 4))
            inject = k % 2 == 0
            u = _gauss_complex(rng, 2)
            if inject:
                # scale one coordinate onto the modulus relation of the branch
                phase = u[0] / abs(u[0])
                if branch == 2:
                    u[1] = math.sqrt(bp) * abs(u[0]) * (u[1] / abs(u[1]))
                else:
                    u[0] = math.sqrt(bp) * abs(u[1]) * phase
            z = make(branch, u)
            expected = inject or abs(bp - 1.0) <= 1e-12
            got = dual_face_membership(z, mp)
            if got != expected:
                failures.append(
                    f"sample {k}: dual-face membership {got}, expected {expected}"
                )
        note = (
            "no constructive protocol: only members obeying the modulus "
            "relation pair to zero with the supporting map, generic members "
            "do not"
        )
        rep = ThroughCheckReport(
            el, samples, samples - len(failures), False, 0.0, note, tuple(failures)
        )
        return rep
    else:
        raise UnsupportedElementError(
            f"no through-decomposition protocol for '{tag}'"
        )
    return ThroughCheckReport(
        el,
        samples,
        samples - len(failures),
        True,
        max_res,
        note,
        tuple(failures),
    )
