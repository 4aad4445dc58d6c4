import numpy as np
import pytest

from odeid import real_jordan

# 3-D worked example: one real mode (-1) and one spiral pair (1/2 +- sqrt(7)/2 i)
EXAMPLE_3D = np.array([[0.0, 1.0, -1.0], [2.0, 0.0, 0.0], [3.0, 1.0, 0.0]])

# the b = 3 member of the unidentifiable class at the starved initial condition
EXAMPLE_3D_MEMBER = np.array([[1.0, -1.0, 0.0], [0.0, 4.0, -2.0], [2.0, 3.0, -1.0]])


def rotation(theta: float) -> np.ndarray:
    c, s = np.cos(theta), np.sin(theta)
    return np.array([[c, -s], [s, c]])


# 2-D minimal-signal example: eigenbasis rotated by pi/6, eigenvalues -1/2 and -6
ROT30 = rotation(np.pi / 6)
EXAMPLE_2D = ROT30 @ np.diag([-0.5, -6.0]) @ ROT30.T


@pytest.fixture
def eq3d():
    return EXAMPLE_3D.copy()


@pytest.fixture
def eq3d_jf():
    return real_jordan(EXAMPLE_3D)


@pytest.fixture
def eq2d():
    return EXAMPLE_2D.copy()
