import pytest

from veech2.qfield import FieldMismatch, QElem
from veech2.tensor import TensorC4, WedgeQQ, tensor, wedge

R2 = QElem.sqrt(2)


def test_wedge_examples():
    assert wedge(1 + R2, 1 - R2) == WedgeQQ(-2)
    x = QElem(3, 5, 7)
    assert wedge(x, x).is_zero()
    assert wedge(QElem(3), QElem(5)).is_zero()


def test_tensor_examples():
    s = QElem.sqrt(3)
    assert tensor(s, s) == TensorC4(0, 0, 0, 1)
    assert tensor(QElem(1), QElem(2, 3, 3)) == TensorC4(2, 3, 0, 0)
    assert tensor(1 + R2, 1 + R2) == TensorC4(1, 1, 1, 1)


def test_bilinear_and_antisymmetric():
    xs = [QElem(1, 2, 5), QElem(-3, 1, 5) / 4, QElem(7), QElem(0, -2, 5)]
    for x in xs:
        for y in xs:
            assert wedge(x, y) == -wedge(y, x)
            assert tensor(x, y).transpose() == tensor(y, x)
            for z in xs:
                assert wedge(x + z, y) == wedge(x, y) + wedge(z, y)
                assert tensor(x, y + z) == tensor(x, y) + tensor(x, z)


def test_mixed_fields_rejected():
    with pytest.raises(FieldMismatch):
        wedge(QElem.sqrt(2), QElem.sqrt(3))
