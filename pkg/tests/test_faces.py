"""Face membership, product-vector families, kernel fixtures, through checks."""

import math

import numpy as np
import pytest

from choi_faces import classifier, decomposer, linalg, maps
from choi_faces.errors import (
    DegenerateVectorError,
    NotPositiveMapError,
    NotPPTError,
    OutOfRangeError,
    UnsupportedElementError,
)
from choi_faces.faces import (
    FacePair,
    dual_face_membership,
    face_of,
    kernel_fixtures,
    q_f_test,
    q_family,
    q_membership,
    through_decomposition_check,
)
from choi_faces.states import build_state, partial_transpose


def rank_of_projector(p):
    return int(round(np.trace(p).real))


def test_face_of_projector_ranks():
    # kernel dims (2, 3) leave ranks (7, 6)
    fp = face_of((1, 1, 1))
    assert rank_of_projector(fp.d) == 7
    assert rank_of_projector(fp.e) == 6
    # a > 1 with bc = 1: state full rank, gamma rank 6
    fp = face_of((2, 2, 0.5))
    assert rank_of_projector(fp.d) == 9
    assert rank_of_projector(fp.e) == 6


def test_face_of_interior_gives_identity():
    fp = face_of((3, 2, 2))
    assert np.allclose(fp.d, np.eye(9), atol=1e-10)
    assert np.allclose(fp.e, np.eye(9), atol=1e-10)


def test_face_of_projector_properties():
    fp = face_of((1, 2, 3))
    for p in fp:
        assert np.linalg.norm(p @ p - p) <= 1e-10
        assert np.linalg.norm(p - p.conj().T) <= 1e-10
    # a 9x9 matrix is accepted in place of the parameter triple
    fp2 = face_of(build_state(1, 2, 3))
    assert np.allclose(fp.d, fp2.d, atol=1e-12)
    assert np.allclose(fp.e, fp2.e, atol=1e-12)


def test_face_of_rejects_non_ppt():
    with pytest.raises(NotPPTError):
        face_of((1.2, 3, 0.2))  # bc < 1, gamma not PSD
    with pytest.raises(NotPPTError):
        face_of((0.5, 1, 1))  # a < 1, state not PSD
    with pytest.raises(OutOfRangeError):
        face_of(np.eye(4))


def test_q_membership_examples():
    x = np.array([1.0, np.exp(0.7j), np.exp(-2.1j)])
    assert q_membership((np.conj(x), x), (1, 1, 1))
    e1 = np.array([1.0, 0, 0])
    e2 = np.array([0, 1.0, 0])
    assert not q_membership((e1, e2), (1, 1, 1))
    b = 2.0
    x2, x3 = np.exp(0.4j), 1.3 * np.exp(-0.9j)
    z = ((0, np.conj(x2), b * np.conj(x3)), (0, x2, x3))
    assert q_membership(z, (2, b, 1 / b))


def test_q_membership_face_reuse_and_errors():
    fp = face_of((1, 1, 1))
    x = np.exp(1j * np.array([0.1, 2.0, -1.3]))
    # a precomputed pair skips the eigendecompositions but answers the same
    assert q_membership((np.conj(x), x), (1, 1, 1), face=fp)
    assert not q_membership((x, x), (1, 1, 1), face=fp)
    with pytest.raises(DegenerateVectorError):
        q_membership((np.zeros(3), x), (1, 1, 1), face=fp)


def test_q_f_test():
    e1 = np.array([1.0, 0, 0])
    e2 = np.array([0, 1.0, 0])
    assert q_f_test((e1, e2))  # all products zero
    assert q_f_test(((1, 2, 1), (1, 0.5, 1)))  # all products one
    assert not q_f_test(((1, 1, 1), (1, 2, 3)))
    assert not q_f_test((np.zeros(3), np.zeros(3)))


def test_dual_face_membership_modulus_relation():
    b = 2.0
    mp = maps.phi_t(1 / b)
    # branch 3 member with |x1|^2 = b |x2|^2 pairs to zero
    u = (math.sqrt(b) * np.exp(0.3j), np.exp(-1.1j))
    z = ((np.conj(u[0]), b * np.conj(u[1]), 0), (u[0], u[1], 0))
    assert dual_face_membership(z, mp)
    # doubling the modulus ratio leaves a positive pairing
    u = (2.0 * np.exp(0.3j), np.exp(-1.1j))
    z = ((np.conj(u[0]), b * np.conj(u[1]), 0), (u[0], u[1], 0))
    assert not dual_face_membership(z, mp)


def test_dual_face_membership_requires_positive_map():
    x = np.array([1.0, 1.0, 1.0])
    with pytest.raises(NotPositiveMapError):
        dual_face_membership((x, x), maps.MapParams(1.0, 0.0, 0.0))


def test_q_family_make_fixtures():
    z = q_family("v1").make((1, 1j, -1))
    assert np.allclose(z[0], [1, -1j, -1])
    assert np.allclose(z[1], [1, 1j, -1])
    z = q_family("v_b", b=2.0).make(3, (1, 1))
    assert np.allclose(z[0], [1, 2, 0])
    assert np.allclose(z[1], [1, 1, 0])
    z = q_family("f").make(7, 2, 1)
    assert np.allclose(z[0], [1, 2, 1])
    assert np.allclose(z[1], [1, 0.5, 1])
    x = np.array([1.0, 1j, 0.0])
    z = q_family("e1").make(x)
    assert np.allclose(z[0], x)
    assert np.allclose(z[1], np.conj(x))


def test_q_family_accepts_boundary_element():
    el = classifier.boundary_element((2, 3, 1 / 3))
    qf = q_family(el)
    assert qf.tag == "v_b"
    z = qf.make(1, (1, 2))
    assert np.allclose(z[0], [0, 1, 6])  # b = 3 scales the last slot
    assert np.allclose(z[1], [0, 1, 2])


def test_q_family_argument_errors():
    with pytest.raises(OutOfRangeError):
        q_family("v1").make((1, 2, 1))  # moduli must agree
    with pytest.raises(DegenerateVectorError):
        q_family("v1").make((0, 0, 0))
    with pytest.raises(DegenerateVectorError):
        q_family("e1").make(np.zeros(3))
    with pytest.raises(DegenerateVectorError):
        q_family("v_b", b=2.0).make(1, (0, 0))
    with pytest.raises(OutOfRangeError):
        q_family("v_b", b=2.0).make(4, (1, 1))
    with pytest.raises(OutOfRangeError):
        q_family("v_b")  # b is required
    with pytest.raises(OutOfRangeError):
        q_family("e_hat_b", b=0.0)
    for tag in ("e0", "e_inf", "e_b_edge", "interior"):
        with pytest.raises(UnsupportedElementError):
            q_family(tag)


def test_q_family_members_pass_membership():
    rng = np.random.default_rng(45)
    cases = [
        ("v1", None, (1, 1, 1)),
        ("e1", None, (1.5, 1, 1)),
        ("e1", None, (3, 1, 1)),
        ("v_b", 2.0, (2, 2, 0.5)),
        ("v_b", 0.5, (2, 0.5, 2)),
        ("e_hat_b", 2.0, (3, 2, 0.5)),
        ("f", None, (1, 1.5, 3)),
    ]
    for tag, b, p in cases:
        qf = q_family(tag, b=b)
        fp = face_of(p)
        for _ in range(200):
            assert q_membership(qf.sample(rng), p, face=fp), (tag, p)


def test_vb_family_zero_pattern():
    rng = np.random.default_rng(46)
    qf = q_family("v_b", b=2.0)
    for _ in range(200):
        z = qf.sample(rng)
        x = np.asarray(z[0])
        y = np.asarray(z[1])
        zx = np.abs(x) <= 1e-12 * np.abs(x).max()
        zy = np.abs(y) <= 1e-12 * np.abs(y).max()
        # supports agree slotwise and at least one slot is empty
        assert np.array_equal(zx, zy)
        assert zx.any()


def test_vb_membership_needs_a_zero_slot():
    # fully supported product vectors never land in the face of A[2,b,1/b]
    rng = np.random.default_rng(47)
    b = 2.0
    fp = face_of((2, b, 1 / b))
    for _ in range(200):
        mods = rng.uniform(0.3, 2.0, 6)
        args = rng.uniform(0.0, 2.0 * math.pi, 6)
        v = mods * np.exp(1j * args)
        assert not q_membership((v[:3], v[3:]), (2, b, 1 / b), face=fp)


def test_dual_face_phi1_parallel_characterization():
    rng = np.random.default_rng(48)
    mp = maps.phi_t(1.0)
    for _ in range(200):
        x = rng.standard_normal(3) + 1j * rng.standard_normal(3)
        lam = rng.standard_normal() + 1j * rng.standard_normal()
        if abs(lam) < 1e-3:
            lam = 1.0
        # y parallel to conj(x): zero pairing
        assert dual_face_membership((x, lam * np.conj(x)), mp)
        y = rng.standard_normal(3) + 1j * rng.standard_normal(3)
        cross = np.cross(np.conj(x), y)
        if np.linalg.norm(cross) > 1e-3:
            assert not dual_face_membership((x, y), mp)


def test_dual_face_ratio_sweep():
    rng = np.random.default_rng(49)
    for b in (2.0, 0.5):
        mp = maps.phi_t(1 / b)
        qf = q_family("v_b", b=b)
        for branch in (1, 2, 3):
            for r in (0.4, 1.0, math.sqrt(b), 2.5, 1 / math.sqrt(b)):
                u = np.array(
                    [r * np.exp(1j * rng.uniform(0, 2 * math.pi)),
                     np.exp(1j * rng.uniform(0, 2 * math.pi))]
                )
                z = qf.make(branch, u)
                want = r**2 * b if branch == 2 else r**2 / b
                got = dual_face_membership(z, mp)
                assert got == (abs(want - 1.0) <= 1e-9), (b, branch, r)


def test_kernel_fixtures_v1():
    fx = kernel_fixtures("v1")
    assert fx.state.shape == (9, 2)
    assert fx.gamma.shape == (9, 3)
    # literal vectors: e0 - e4 first, and e1 - e3 first in the gamma basis
    assert np.allclose(fx.state[:, 0], np.eye(9)[0] - np.eye(9)[4])
    assert np.allclose(fx.gamma[:, 0], np.eye(9)[1] - np.eye(9)[3])
    mat = build_state(1, 1, 1)
    gamma = partial_transpose(mat)
    assert np.linalg.norm(mat @ fx.state) <= 1e-12
    assert np.linalg.norm(gamma @ fx.gamma) <= 1e-12
    # span equality against the complementary range projectors
    p = linalg.span_projector(fx.state)
    assert np.linalg.norm(p - (np.eye(9) - linalg.range_projector(mat))) <= 1e-8
    q = linalg.span_projector(fx.gamma)
    assert np.linalg.norm(q - (np.eye(9) - linalg.range_projector(gamma))) <= 1e-8


def test_kernel_fixtures_vb():
    fx = kernel_fixtures("v_b", b=2.0)
    assert fx.state.shape == (9, 0)  # state is full rank
    assert fx.gamma.shape == (9, 3)
    assert np.allclose(fx.gamma[:, 0], 2.0 * np.eye(9)[1] - np.eye(9)[3])
    mat = build_state(2, 2, 0.5)
    gamma = partial_transpose(mat)
    assert linalg.rank_of(mat) == 9
    assert np.linalg.norm(gamma @ fx.gamma) <= 1e-12
    q = linalg.span_projector(fx.gamma)
    assert np.linalg.norm(q - (np.eye(9) - linalg.range_projector(gamma))) <= 1e-8


def test_kernel_fixtures_arguments():
    el = classifier.boundary_element((2, 3, 1 / 3))
    fx = kernel_fixtures(el)
    assert np.allclose(fx.gamma[:, 0], 3.0 * np.eye(9)[1] - np.eye(9)[3])
    with pytest.raises(OutOfRangeError):
        kernel_fixtures("v_b")
    with pytest.raises(OutOfRangeError):
        kernel_fixtures("v_b", b=-1.0)
    for tag in ("e1", "f", "interior"):
        with pytest.raises(UnsupportedElementError):
            kernel_fixtures(tag)


def test_through_check_constructive_cases():
    cases = [
        ((1, 1, 1), "v1"),
        ((1.5, 1, 1), "e1"),
        ((3, 1, 1), "e1"),
        ((3, 2, 0.5), "e_hat_b"),
        ((3, 0.5, 2), "e_hat_b"),
        ((1, 1.5, 3), "f"),
    ]
    for p, tag in cases:
        rep = through_decomposition_check(p, samples=10, seed=5)
        assert rep.element.tag == tag
        assert rep.samples == 10
        assert rep.passed == 10
        assert rep.constructive
        assert rep.max_residual <= 1e-10
        assert rep.failures == ()
        assert rep.note


def test_through_check_vb_negative_case():
    rep = through_decomposition_check((2, 2, 0.5), samples=10, seed=5)
    assert rep.element.tag == "v_b"
    assert not rep.constructive
    assert rep.passed == 10
    assert rep.max_residual == 0.0
    assert rep.failures == ()


def test_through_check_determinism():
    a = through_decomposition_check((1, 2, 3), samples=8, seed=11)
    b = through_decomposition_check((1, 2, 3), samples=8, seed=11)
    assert a.passed == b.passed
    assert a.max_residual == b.max_residual


def test_through_check_argument_errors():
    with pytest.raises(OutOfRangeError):
        through_decomposition_check((1, 1, 1), samples=0)
    with pytest.raises(UnsupportedElementError):
        through_decomposition_check((3, 2, 2))  # interior point
    with pytest.raises(UnsupportedElementError):
        through_decomposition_check((1, 1, 4))  # no protocol for this edge
    with pytest.raises(UnsupportedElementError):
        through_decomposition_check((1, 2, 0.5))  # not separable
