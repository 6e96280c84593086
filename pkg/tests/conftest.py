import numpy as np
import pytest

from maglap.fem.assembly import BoundaryCondition, HermitianPencil
from maglap.fem.field import MagneticField
from maglap.geometry.mesh import triangulate
from maglap.geometry.polygon import rectangle
from maglap.harness.pipeline import pencils


@pytest.fixture
def unit_square():
    return rectangle(0.0, 0.0, 1.0, 1.0)


@pytest.fixture
def square_mesh(unit_square):
    return triangulate(unit_square, 3)


@pytest.fixture
def magnetic_pencils(square_mesh):
    return pencils(square_mesh, MagneticField(1.5))


@pytest.fixture
def make_pencil():
    def factory(K, M=None, bc=BoundaryCondition.NEUMANN):
        K = np.asarray(K, dtype=complex)
        M = np.eye(K.shape[0]) if M is None else np.asarray(M, dtype=float)
        return HermitianPencil(K=K, M=M, bc=bc, dof_map=np.arange(K.shape[0]))

    return factory
