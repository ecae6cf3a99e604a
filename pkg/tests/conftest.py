import pytest

from pargroup.groups import group_abelian, group_cyclic, group_dihedral, group_from_permutations
from pargroup.zoo import zoo


def groups_up_to_24():
    """Zoo groups plus a few larger ones, all of order at most 24."""
    out = dict(zoo())
    out["S4"] = group_from_permutations(4, ["(1 2 3 4)", "(1 2)"])
    out["D12"] = group_dihedral(12)
    out["Z2xZ2xZ4"] = group_abelian([2, 2, 4])
    out["Z16"] = group_cyclic(16)
    out["Z3xS3"] = group_from_permutations(6, ["(1 2 3)", "(1 2)", "(4 5 6)"])
    return out


@pytest.fixture(scope="session")
def small_groups():
    return zoo(max_order=12)


@pytest.fixture(scope="session")
def medium_groups():
    return groups_up_to_24()
