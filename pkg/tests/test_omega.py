import pytest
from conftest import kG

from frobmeas.errors import DimensionMismatch, SignatureMismatch, UnknownOp
from frobmeas.omega import FROBENIUS_SIGNATURE, LinearMap, OmegaAlgebra, Signature, apply_op, check_omega_morphism
from frobmeas.scalar import QQ, PrimeField


def test_apply_op_on_group_algebra():
    A = kG(QQ, "C2")
    assert apply_op(A, "mu", [[0, 1], [0, 1]]) == {(0,): 1}
    assert apply_op(A, "delta", [[0, 1]]) == {(1, 0): 1, (0, 1): 1}
    assert apply_op(A, "nu", [[3, 5]]) == {(): 3}
    assert apply_op(A, "eta", []) == {(0,): 1}


def test_apply_op_accepts_tensors():
    A = kG(QQ, "C3")
    assert apply_op(A, "mu", {(1, 2): 2, (1, 1): 1}) == {(0,): 2, (2,): 1}


def test_apply_op_rejects_bad_inputs():
    A = kG(QQ, "C2")
    with pytest.raises(DimensionMismatch):
        apply_op(A, "mu", [[1, 0]])
    with pytest.raises(DimensionMismatch):
        apply_op(A, "mu", {(0, 5): 1})
    with pytest.raises(UnknownOp):
        apply_op(A, "sigma", [])


def test_signature_registry():
    assert len(FROBENIUS_SIGNATURE) == 4
    assert FROBENIUS_SIGNATURE["delta"].target == 2
    assert Signature.from_list(FROBENIUS_SIGNATURE.to_list()) == FROBENIUS_SIGNATURE


def test_projection_is_not_a_morphism():
    A = kG(QQ, "C2")
    f = LinearMap(A, A, [[1, 0], [0, 0]])
    assert ("mu", (1, 1)) in check_omega_morphism(f)


def test_rotation_of_c3_is_a_morphism():
    A = kG(QQ, "C3")
    tau = LinearMap(A, A, [[1, 0, 0], [0, 0, 1], [0, 1, 0]])
    assert check_omega_morphism(tau) == []
    assert check_omega_morphism(LinearMap.identity(A)) == []
    assert tau.compose(tau).is_identity()


def test_morphism_needs_matching_signatures():
    A = kG(QQ, "C2")
    B = OmegaAlgebra(QQ, ["u", "v"], Signature([("mu", 2, 1)]), {"mu": {}})
    with pytest.raises(SignatureMismatch):
        check_omega_morphism(LinearMap(A, B, [[1, 0], [0, 1]]))


def test_linear_maps_need_one_field():
    with pytest.raises(SignatureMismatch):
        LinearMap(kG(QQ, "C2"), kG(PrimeField(3), "C2"), [[1, 0], [0, 1]])


def test_serialization_round_trip():
    A = kG(PrimeField(5), "C3")
    B = OmegaAlgebra.from_dict(A.to_dict())
    assert B.basis == A.basis and B.tables == A.tables and B.ctx == A.ctx
