"""Explicit separable decompositions of family states.

Every decomposition here is a finite positive combination of product-vector
projectors (x (x) y)(x (x) y)* that reproduces its target A[a,b,c] exactly.
Summing each vector family over cube-root-of-unity phases cancels every
matrix entry outside the family's sparsity pattern, which is what makes the
reconstructions exact.  The through_* variants reorder and, when needed,
interpolate between two family instances so that the first term is the
projector onto a prescribed product vector; weights stay positive by
construction of the interpolation parameter.
"""

from __future__ import annotations

import cmath
import math
from typing import NamedTuple

import numpy as np

from . import classifier
from .errors import (
    ConstraintViolatedError,
    DegeneratePairError,
    DegenerateVectorError,
    NotInQError,
    NotSeparableError,
    OutOfRangeError,
    ZeroAlphaError,
)
from .states import StateParams, build_state

OMEGA = (
    complex(1.0),
    cmath.exp(2j * math.pi / 3.0),
    cmath.exp(-2j * math.pi / 3.0),
)

# weights at or below this are dropped as exact zeros of the construction
WEIGHT_EPS = 1e-12

# decisions like "did the interpolation target hit exactly" use this
MATCH_EPS = 1e-12


class ProductVector(NamedTuple):
    """Pair (x, y) of complex 3-vectors standing for x tensor y."""

    x: np.ndarray
    y: np.ndarray


class Decomposition(NamedTuple):
    """Weighted product vectors summing to A[target]."""

    target: StateParams
    terms: tuple


class SevenTuple(NamedTuple):
    """Seven (s,t) pairs whose phase-averaged sum is A[1, b_V, c_V]."""

    pairs: tuple
    b_V: float
    c_V: float


def product_vector(x, y) -> ProductVector:
    xv = np.asarray(x, dtype=np.complex128).reshape(3)
    yv = np.asarray(y, dtype=np.complex128).reshape(3)
    return ProductVector(xv, yv)


def embed(z: ProductVector) -> np.ndarray:
    """The vector x tensor y in C^9, lexicographic slot order."""
    return np.kron(z.x, z.y)


def partial_conjugate(z: ProductVector) -> ProductVector:
    """conj(x) tensor y; its projector builds the partial transpose."""
    return ProductVector(np.conj(z.x), z.y)


def _unit_pv(i: int, j: int) -> ProductVector:
    e = np.eye(3, dtype=np.complex128)
    return ProductVector(e[i].copy(), e[j].copy())


# diagonal product states on the b-slots (x1 y3, x2 y1, x3 y2) and the
# c-slots (x1 y2, x2 y3, x3 y1)
B_UNITS = (_unit_pv(0, 2), _unit_pv(1, 0), _unit_pv(2, 1))
C_UNITS = (_unit_pv(0, 1), _unit_pv(1, 2), _unit_pv(2, 0))


def omega_roots() -> list:
    """The three cube roots of unity."""
    return list(OMEGA)


def reconstruct(dec: Decomposition) -> np.ndarray:
    """Sum of weight * (x tensor y)(x tensor y)* over all terms."""
    if not dec.terms:
        return np.zeros((9, 9), dtype=np.complex128)
    vecs = np.array([embed(z) for _, z in dec.terms])
    w = np.array([float(wt) for wt, _ in dec.terms])
    return (vecs * w[:, None]).T @ np.conj(vecs)


def reconstruct_partial(dec: Decomposition) -> np.ndarray:
    """Same sum over the partial conjugates; equals A[target]^Gamma."""
    if not dec.terms:
        return np.zeros((9, 9), dtype=np.complex128)
    vecs = np.array([embed(partial_conjugate(z)) for _, z in dec.terms])
    w = np.array([float(wt) for wt, _ in dec.terms])
    return (vecs * w[:, None]).T @ np.conj(vecs)


def residual(dec: Decomposition) -> float:
    """Relative Frobenius distance of the reconstruction from A[target]."""
    a = build_state(*dec.target)
    return float(np.linalg.norm(reconstruct(dec) - a) / np.linalg.norm(a))


def decomposition_to_dict(dec: Decomposition) -> dict:
    """JSON-ready certificate: target, terms with re/im pairs, residual."""
    a, b, c = dec.target
    terms = []
    for w, z in dec.terms:
        terms.append(
            {
                "weight": float(w),
                "x": [[float(v.real), float(v.imag)] for v in z.x],
                "y": [[float(v.real), float(v.imag)] for v in z.y],
            }
        )
    return {
        "target": {"a": float(a), "b": float(b), "c": float(c)},
        "terms": terms,
        "residual": residual(dec),
    }


def decomposition_from_dict(doc) -> Decomposition:
    """Parse a certificate dict; ValueError on structural problems."""
    if not isinstance(doc, dict):
        raise ValueError("certificate must be a JSON object")
    try:
        tgt = doc["target"]
        target = StateParams(float(tgt["a"]), float(tgt["b"]), float(tgt["c"]))
        terms = []
        for item in doc["terms"]:
            w = float(item["weight"])
            x = [complex(re, im) for re, im in item["x"]]
            y = [complex(re, im) for re, im in item["y"]]
            if len(x) != 3 or len(y) != 3:
                raise ValueError("term vectors must have three coordinates")
            terms.append((w, product_vector(x, y)))
    except (KeyError, TypeError, IndexError) as exc:
        raise ValueError(f"malformed certificate: {exc!r}") from exc
    return Decomposition(target, tuple(terms))


def z_vec(i: int, omega, b: float) -> ProductVector:
    """The i-th product vector of the A[2,b,1/b] family at phase omega.

    z1 = (0, 1, sqrt(b) w) (x) (0, sqrt(b), conj(w)) and cyclic shifts of
    the support pattern for i = 2, 3.  Valid for |omega| = 1.
    """
    if i not in (1, 2, 3):
        raise OutOfRangeError(f"family index must be 1..3, got {i}")
    if not (b > 0.0):
        raise OutOfRangeError(f"b must be positive, got {b}")
    r = math.sqrt(b)
    w = complex(omega)
    wb = w.conjugate()
    if i == 1:
        return product_vector((0.0, 1.0, r * w), (0.0, r, wb))
    if i == 2:
        return product_vector((r * w, 0.0, 1.0), (wb, 0.0, r))
    return product_vector((1.0, r * w, 0.0), (r, wb, 0.0))


def z4(omega, eta) -> ProductVector:
    """(1, conj(w), conj(e)) (x) (1, w, e); diagonal slots all equal 1."""
    w = complex(omega)
    e = complex(eta)
    return product_vector((1.0, w.conjugate(), e.conjugate()), (1.0, w, e))


def decompose_v1() -> Decomposition:
    """A[1,1,1] as nine z4 projectors of weight 1/9 over the phase grid."""
    terms = [(1.0 / 9.0, z4(w, e)) for w in OMEGA for e in OMEGA]
    return Decomposition(StateParams(1.0, 1.0, 1.0), tuple(terms))


def decompose_through_v1(alpha, beta) -> Decomposition:
    """A[1,1,1] with the phase grid rotated so the first term is
    (1, conj(alpha), conj(beta)) (x) (1, alpha, beta); needs unit moduli."""
    al = complex(alpha)
    be = complex(beta)
    if abs(abs(al) - 1.0) > MATCH_EPS or abs(abs(be) - 1.0) > MATCH_EPS:
        raise ConstraintViolatedError("phases must have modulus 1")
    terms = [(1.0 / 9.0, z4(al * w, be * e)) for w in OMEGA for e in OMEGA]
    return Decomposition(StateParams(1.0, 1.0, 1.0), tuple(terms))


def decompose_vb(b: float) -> Decomposition:
    """A[2,b,1/b] as nine z_vec projectors of weight 1/(3b)."""
    if not (b > 0.0):
        raise OutOfRangeError(f"b must be positive, got {b}")
    w0 = 1.0 / (3.0 * b)
    terms = [(w0, z_vec(i, w, b)) for i in (1, 2, 3) for w in OMEGA]
    return Decomposition(StateParams(2.0, b, 1.0 / b), tuple(terms))


def decompose_through_vb(b: float, alpha) -> Decomposition:
    """A[2,b,1/b] with the phases rotated by sqrt(b)*conj(alpha), which
    requires b|alpha|^2 = 1 so the rotation stays on the unit circle."""
    if not (b > 0.0):
        raise OutOfRangeError(f"b must be positive, got {b}")
    al = complex(alpha)
    if abs(b * abs(al) ** 2 - 1.0) > MATCH_EPS:
        raise ConstraintViolatedError(
            f"need b*|alpha|^2 = 1, got {b * abs(al) ** 2}"
        )
    u = math.sqrt(b) * al.conjugate()
    w0 = 1.0 / (3.0 * b)
    terms = [(w0, z_vec(i, u * w, b)) for i in (1, 2, 3) for w in OMEGA]
    return Decomposition(StateParams(2.0, b, 1.0 / b), tuple(terms))


def a_of_alpha(b: float, alpha) -> float:
    """b|alpha|^2 + 1/(b|alpha|^2); at least 2, with equality at 1/sqrt(b)."""
    if not (b > 0.0):
        raise OutOfRangeError(f"b must be positive, got {b}")
    m = b * abs(complex(alpha)) ** 2
    if m == 0.0:
        raise ZeroAlphaError("alpha must be nonzero")
    return m + 1.0 / m


def z_tilde(i: int, alpha, b: float) -> ProductVector:
    """Member i of the a(alpha) family: zt1 = (0,1,b conj(a)) (x) (0,1,a)
    and the two cyclic support shifts; zt_i(0) are the diagonal a-slots."""
    if i not in (1, 2, 3):
        raise OutOfRangeError(f"family index must be 1..3, got {i}")
    if not (b > 0.0):
        raise OutOfRangeError(f"b must be positive, got {b}")
    al = complex(alpha)
    ab = b * al.conjugate()
    if i == 1:
        return product_vector((0.0, 1.0, ab), (0.0, 1.0, al))
    if i == 2:
        return product_vector((ab, 0.0, 1.0), (al, 0.0, 1.0))
    return product_vector((1.0, ab, 0.0), (1.0, al, 0.0))


def decompose_e_hat_b(a: float, b: float) -> Decomposition:
    """A[a,b,1/b] for a >= 2: the A[2,b,1/b] family plus weight (a-2) on
    each diagonal a-slot product state."""
    if a < 2.0:
        raise OutOfRangeError(f"this construction needs a >= 2, got {a}")
    terms = list(decompose_vb(b).terms)
    if a - 2.0 > WEIGHT_EPS:
        terms += [(a - 2.0, z_tilde(i, 0.0, b)) for i in (1, 2, 3)]
    return Decomposition(StateParams(a, b, 1.0 / b), tuple(terms))


def _zt_family(b: float, alpha: complex, weight: float, first: int) -> list:
    w0 = weight / (3.0 * b * abs(alpha) ** 2)
    order = [(first - 1 + k) % 3 + 1 for k in range(3)]
    return [(w0, z_tilde(i, alpha * w, b)) for i in order for w in OMEGA]


def decompose_through_e_hat_b(a: float, b: float, alpha, branch: int = 1) -> Decomposition:
    """A[a,b,1/b] with first term proportional to z_tilde(branch, alpha).

    The alpha family alone sums to A[a(alpha),b,1/b]; when a(alpha) differs
    from a, a second family at beta is blended in with weights 1/t0 and
    1 - 1/t0, where beta solves a(beta) = t0*a - (t0-1)*a(alpha) > 2.  The
    target a = 2 admits no blend (only the exact-hit alpha works there).
    """
    if a < 2.0:
        raise OutOfRangeError(f"this construction needs a >= 2, got {a}")
    if branch not in (1, 2, 3):
        raise OutOfRangeError(f"branch must be 1..3, got {branch}")
    al = complex(alpha)
    v = a_of_alpha(b, al)
    if abs(v - a) <= MATCH_EPS:
        terms = _zt_family(b, al, 1.0, branch)
        return Decomposition(StateParams(a, b, 1.0 / b), tuple(terms))
    if v > a:
        if a <= 2.0 + MATCH_EPS:
            raise OutOfRangeError(
                "a = 2 is the family minimum; only alpha with b|alpha|^2 = 1 decomposes through it"
            )
        t0 = 0.5 * (1.0 + (v - 2.0) / (v - a))
    else:
        t0 = 2.0
    tgt = v + t0 * (a - v)
    beta = math.sqrt((tgt + math.sqrt(tgt * tgt - 4.0)) / (2.0 * b))
    terms = _zt_family(b, al, 1.0 - 1.0 / t0, branch)
    terms += _zt_family(b, beta, 1.0 / t0, branch)
    return Decomposition(StateParams(a, b, 1.0 / b), tuple(terms))


def k_and_a(x) -> tuple[float, float]:
    """k = sum of pairwise |x_i|^2 |x_j|^2 and a = sum |x_i|^4 / k.

    a >= 1 with equality exactly when all moduli agree; k = 0 (fewer than
    two nonzero coordinates) is rejected.
    """
    xv = np.asarray(x, dtype=np.complex128).reshape(3)
    m = np.abs(xv) ** 2
    k = float(m[0] * m[1] + m[1] * m[2] + m[2] * m[0])
    n2 = float(m.sum())
    if n2 == 0.0 or k <= 1e-24 * n2 * n2:
        raise DegenerateVectorError("needs at least two nonzero coordinates")
    return k, float((m**2).sum() / k)


def conj_pair(x) -> ProductVector:
    """x (x) conj(x), the product-vector family of the b = c = 1 edge."""
    xv = np.asarray(x, dtype=np.complex128).reshape(3)
    return ProductVector(xv.copy(), np.conj(xv))


def decompose_e1(a: float) -> Decomposition:
    """A[a,1,1] for a >= 1: A[1,1,1] plus weight (a-1) on each axis
    product state e_i (x) e_i."""
    if a < 1.0:
        raise OutOfRangeError(f"this construction needs a >= 1, got {a}")
    terms = list(decompose_v1().terms)
    if a - 1.0 > WEIGHT_EPS:
        terms += [(a - 1.0, conj_pair(np.eye(3)[i])) for i in range(3)]
    return Decomposition(StateParams(a, 1.0, 1.0), tuple(terms))


def _e1_family(x: np.ndarray, weight: float) -> list:
    k, _ = k_and_a(x)
    w0 = weight / (9.0 * k)
    out = []
    for rot in (x, np.roll(x, -1), np.roll(x, -2)):
        for w in OMEGA:
            for e in OMEGA:
                out.append((w0, conj_pair([rot[0], w * rot[1], e * rot[2]])))
    return out


def decompose_through_e1(a: float, x) -> Decomposition:
    """A[a,1,1] whose first term is the projector onto x (x) conj(x).

    A vector on a coordinate axis reduces to decompose_e1 with that axis
    term first, which needs a > 1.  Otherwise the cyclic 27-term family of
    x sums to A[a(x),1,1], and a second family at (sqrt(u),1,1) is blended
    in when a(x) differs from a; the target a = 1 only admits vectors with
    all moduli equal (a(x) = 1).
    """
    if a < 1.0:
        raise OutOfRangeError(f"this construction needs a >= 1, got {a}")
    xv = np.asarray(x, dtype=np.complex128).reshape(3)
    mags = np.abs(xv)
    if mags.max() == 0.0:
        raise DegenerateVectorError("x must be nonzero")
    if int((mags > 1e-14 * mags.max()).sum()) == 1:
        axis = int(np.argmax(mags))
        if a <= 1.0 + MATCH_EPS:
            raise OutOfRangeError(
                "the axis term carries weight a - 1, so the target needs a > 1"
            )
        eye = np.eye(3)
        order = [axis, (axis + 1) % 3, (axis + 2) % 3]
        terms = [(a - 1.0, conj_pair(eye[i])) for i in order]
        terms += list(decompose_v1().terms)
        return Decomposition(StateParams(a, 1.0, 1.0), tuple(terms))
    _, v = k_and_a(xv)
    if abs(v - a) <= MATCH_EPS:
        terms = _e1_family(xv, 1.0)
        return Decomposition(StateParams(a, 1.0, 1.0), tuple(terms))
    if v > a:
        if a <= 1.0 + MATCH_EPS:
            raise OutOfRangeError(
                "a = 1 only admits vectors with all moduli equal"
            )
        t0 = 0.5 * (1.0 + (v - 1.0) / (v - a))
    else:
        t0 = 2.0
    tgt = v + t0 * (a - v)
    u = tgt + math.sqrt(tgt * tgt + tgt - 2.0)
    xt = np.array([math.sqrt(u), 1.0, 1.0], dtype=np.complex128)
    terms = _e1_family(xv, 1.0 - 1.0 / t0) + _e1_family(xt, 1.0 / t0)
    return Decomposition(StateParams(a, 1.0, 1.0), tuple(terms))


def f_vector(i: int, s, t) -> ProductVector:
    """Branch i of the face product-vector family.

    Branches 1..3 put an axis vector on the left, 4..6 on the right, and
    branch 7 is (1,s,t) (x) (1,1/s,1/t), which needs s, t nonzero.
    """
    sv = complex(s)
    tv = complex(t)
    if i == 1:
        return product_vector((1, 0, 0), (0, sv, tv))
    if i == 2:
        return product_vector((0, 1, 0), (sv, 0, tv))
    if i == 3:
        return product_vector((0, 0, 1), (sv, tv, 0))
    if i == 4:
        return product_vector((0, sv, tv), (1, 0, 0))
    if i == 5:
        return product_vector((sv, 0, tv), (0, 1, 0))
    if i == 6:
        return product_vector((sv, tv, 0), (0, 0, 1))
    if i == 7:
        if sv == 0 or tv == 0:
            raise DegeneratePairError("branch 7 needs both entries nonzero")
        return product_vector((1, sv, tv), (1, 1 / sv, 1 / tv))
    raise OutOfRangeError(f"branch index must be 1..7, got {i}")


def seven_tuple_complete(i: int, s, t) -> SevenTuple:
    """Fill the remaining six pairs around a seeded (s,t) at branch i.

    Unseeded branch-7 entries default to 1.  Each of the six diagonal sums
    then gets at most one real magnitude, raising it to the maximum sum of
    its chain; b_V and c_V are those maxima and are always >= 1.
    """
    if i not in range(1, 8):
        raise OutOfRangeError(f"branch index must be 1..7, got {i}")
    sv = complex(s)
    tv = complex(t)
    if sv == 0 and tv == 0:
        raise DegeneratePairError("seed pair must be nonzero")
    if i == 7 and (sv == 0 or tv == 0):
        raise DegeneratePairError("a branch-7 seed needs both entries nonzero")
    ss = [0j] * 8
    tt = [0j] * 8
    if i == 7:
        ss[7], tt[7] = sv, tv
    else:
        ss[7] = tt[7] = 1 + 0j
        ss[i], tt[i] = sv, tv
    s7 = abs(ss[7]) ** 2
    t7 = abs(tt[7]) ** 2
    c_sums = [
        1.0 / s7 + abs(ss[1]) ** 2 + abs(ss[5]) ** 2,
        s7 / t7 + abs(tt[2]) ** 2 + abs(tt[6]) ** 2,
        t7 + abs(ss[3]) ** 2 + abs(tt[4]) ** 2,
    ]
    b_sums = [
        1.0 / t7 + abs(ss[6]) ** 2 + abs(tt[1]) ** 2,
        t7 / s7 + abs(tt[3]) ** 2 + abs(tt[5]) ** 2,
        s7 + abs(ss[2]) ** 2 + abs(ss[4]) ** 2,
    ]
    # free slot per sum: first listed unless it sits on the seeded branch
    c_free = [
        (ss, 1) if i != 1 else (ss, 5),
        (tt, 2) if i != 2 else (tt, 6),
        (ss, 3) if i != 3 else (tt, 4),
    ]
    b_free = [
        (ss, 6) if i != 6 else (tt, 1),
        (tt, 3) if i != 3 else (tt, 5),
        (ss, 2) if i != 2 else (ss, 4),
    ]
    c_v = max(c_sums)
    b_v = max(b_sums)
    for (arr, j), val in zip(c_free, c_sums):
        gap = c_v - val
        if gap > 0.0:
            arr[j] = complex(math.sqrt(gap))
    for (arr, j), val in zip(b_free, b_sums):
        gap = b_v - val
        if gap > 0.0:
            arr[j] = complex(math.sqrt(gap))
    pairs = tuple((ss[j], tt[j]) for j in range(1, 8))
    return SevenTuple(pairs, float(b_v), float(c_v))


def seven_tuple_sums(v: SevenTuple) -> tuple[list, list]:
    """The two constraint chains (c-sums, b-sums) of a seven-tuple."""
    ss = [0j] + [p[0] for p in v.pairs]
    tt = [0j] + [p[1] for p in v.pairs]
    s7 = abs(ss[7]) ** 2
    t7 = abs(tt[7]) ** 2
    c_sums = [
        1.0 / s7 + abs(ss[1]) ** 2 + abs(ss[5]) ** 2,
        s7 / t7 + abs(tt[2]) ** 2 + abs(tt[6]) ** 2,
        t7 + abs(ss[3]) ** 2 + abs(tt[4]) ** 2,
    ]
    b_sums = [
        1.0 / t7 + abs(ss[6]) ** 2 + abs(tt[1]) ** 2,
        t7 / s7 + abs(tt[3]) ** 2 + abs(tt[5]) ** 2,
        s7 + abs(ss[2]) ** 2 + abs(ss[4]) ** 2,
    ]
    return c_sums, b_sums


def seven_tuple_terms(v: SevenTuple, weight: float = 1.0, first: int = 7) -> list:
    """Weight/9 phase-grid terms for every nonzero branch, seeded branch
    first; their sum is weight * A[1, b_V, c_V]."""
    order = [first] + [j for j in range(1, 8) if j != first]
    out = []
    for j in order:
        sj, tj = v.pairs[j - 1]
        if j != 7 and sj == 0 and tj == 0:
            continue
        for w in OMEGA:
            for e in OMEGA:
                out.append((weight / 9.0, f_vector(j, w * sj, e * tj)))
    return out


def decompose_f(b: float, c: float) -> Decomposition:
    """A[1,b,c] for b, c >= 1: A[1,1,1] plus diagonal slot states with
    weights b-1 and c-1."""
    if b < 1.0 - 1e-9 or c < 1.0 - 1e-9:
        raise OutOfRangeError(f"this construction needs b, c >= 1, got {(b, c)}")
    terms = list(decompose_v1().terms)
    if b - 1.0 > WEIGHT_EPS:
        terms += [(b - 1.0, u) for u in B_UNITS]
    if c - 1.0 > WEIGHT_EPS:
        terms += [(c - 1.0, u) for u in C_UNITS]
    return Decomposition(StateParams(1.0, b, c), tuple(terms))


def _f_canonical(z) -> tuple[int, complex, complex]:
    """Match a face family member to its branch and seed pair."""
    x = np.asarray(z[0], dtype=np.complex128).reshape(3)
    y = np.asarray(z[1], dtype=np.complex128).reshape(3)
    nx = np.abs(x)
    ny = np.abs(y)
    scale = float(nx.max() * ny.max())
    if scale == 0.0:
        raise NotInQError("zero product vector")
    p = x * y
    if max(abs(p[0] - p[1]), abs(p[1] - p[2]), abs(p[0] - p[2])) > 1e-12 * scale:
        raise NotInQError("coordinate products x_i y_i do not agree")
    xz = nx <= 1e-9 * nx.max()
    yz = ny <= 1e-9 * ny.max()
    if not xz.any() and not yz.any():
        return 7, complex(x[1] / x[0]), complex(x[2] / x[0])
    if not xz[0] and xz[1] and xz[2]:
        return 1, complex(x[0] * y[1]), complex(x[0] * y[2])
    if xz[0] and not xz[1] and xz[2]:
        return 2, complex(x[1] * y[0]), complex(x[1] * y[2])
    if xz[0] and xz[1] and not xz[2]:
        return 3, complex(x[2] * y[0]), complex(x[2] * y[1])
    if not yz[0] and yz[1] and yz[2]:
        return 4, complex(x[1] * y[0]), complex(x[2] * y[0])
    if yz[0] and not yz[1] and yz[2]:
        return 5, complex(x[0] * y[1]), complex(x[2] * y[1])
    if yz[0] and yz[1] and not yz[2]:
        return 6, complex(x[0] * y[2]), complex(x[1] * y[2])
    raise NotInQError("zero pattern matches no face family branch")


def decompose_through_f(b: float, c: float, z) -> Decomposition:
    """A[1,b,c] whose first term is the projector onto the given member z.

    z is completed to a seven-tuple summing to A[1,b_V,c_V]; when (b_V,c_V)
    misses (b,c), that sum is blended with A[1,1,1] plus diagonal slot
    states.  Components already above a unit target cannot be blended down,
    so b = 1 (or c = 1) demands b_V = 1 (c_V = 1) exactly.
    """
    if b < 1.0 - 1e-9 or c < 1.0 - 1e-9:
        raise OutOfRangeError(f"this construction needs b, c >= 1, got {(b, c)}")
    branch, sv, tv = _f_canonical(z)
    tup = seven_tuple_complete(branch, sv, tv)
    bv, cv = tup.b_V, tup.c_V
    if abs(bv - b) <= MATCH_EPS and abs(cv - c) <= MATCH_EPS:
        return Decomposition(
            StateParams(1.0, b, c), tuple(seven_tuple_terms(tup, 1.0, branch))
        )
    ubs = []
    for built, want in ((bv, b), (cv, c)):
        if built > want + MATCH_EPS:
            if want <= 1.0 + MATCH_EPS:
                raise OutOfRangeError(
                    "a unit target cannot absorb a construction that came out larger"
                )
            ubs.append((built - 1.0) / (built - want))
    t0 = 0.5 * (1.0 + min(ubs)) if ubs else 2.0
    terms = seven_tuple_terms(tup, 1.0 - 1.0 / t0, branch)
    terms += [(1.0 / (9.0 * t0), z4(w, e)) for w in OMEGA for e in OMEGA]
    bw = ((1.0 - t0) * bv + t0 * b - 1.0) / t0
    cw = ((1.0 - t0) * cv + t0 * c - 1.0) / t0
    if bw > WEIGHT_EPS:
        terms += [(bw, u) for u in B_UNITS]
    if cw > WEIGHT_EPS:
        terms += [(cw, u) for u in C_UNITS]
    return Decomposition(StateParams(1.0, b, c), tuple(terms))


def decompose_general(p) -> Decomposition:
    """Any separable (a,b,c) as a positive product-vector combination.

    a <= 1 is the face construction; 1 < a < 2 pushes along the line
    through (1,1,1) to a point with a = 2 and tops up the c-slots; a >= 2
    uses that family directly.  Raises NotSeparable (with the
    classification attached) otherwise.
    """
    a, b, c = (float(v) for v in p)
    cls = classifier.classify((a, b, c))
    if not cls.is_separable:
        raise NotSeparableError(
            f"A[{a}, {b}, {c}] is {cls.verdict}", classification=cls
        )
    target = StateParams(a, b, c)
    if a <= 1.0 + MATCH_EPS:
        inner = decompose_f(max(b, 1.0), max(c, 1.0))
        return Decomposition(target, inner.terms)
    if a < 2.0:
        s = a - 1.0
        b1 = (b - 1.0) / s + 1.0
        c1 = (c - 1.0) / s + 1.0
        if b1 <= WEIGHT_EPS:
            raise NotSeparableError(
                f"A[{a}, {b}, {c}] sits outside the separable body",
                classification=cls,
            )
        terms = [((1.0 - s) / 9.0, z4(w, e)) for w in OMEGA for e in OMEGA]
        terms += [(s / (3.0 * b1), z_vec(i, w, b1)) for i in (1, 2, 3) for w in OMEGA]
        topup = s * (c1 - 1.0 / b1)
        if topup > WEIGHT_EPS:
            terms += [(topup, u) for u in C_UNITS]
        return Decomposition(target, tuple(terms))
    terms = list(decompose_e_hat_b(a, b).terms)
    topup = c - 1.0 / b
    if topup > WEIGHT_EPS:
        terms += [(topup, u) for u in C_UNITS]
    return Decomposition(target, tuple(terms))
