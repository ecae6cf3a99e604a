"""Named small groups used in tests and from the command line."""

from __future__ import annotations

from typing import Callable

from .groups import (
    FiniteGroup,
    group_abelian,
    group_cyclic,
    group_dicyclic,
    group_dihedral,
    group_from_permutations,
)


def _named(g: FiniteGroup, name: str) -> FiniteGroup:
    g.name = name
    return g


_BUILDERS: dict[str, Callable[[], FiniteGroup]] = {
    "S3": lambda: _named(group_from_permutations(3, ["(1 2 3)", "(1 2)"]), "S3"),
    "D4": lambda: group_dihedral(4),
    "D5": lambda: group_dihedral(5),
    "D6": lambda: group_dihedral(6),
    "Q8": lambda: group_dicyclic(2),
    "Dic3": lambda: group_dicyclic(3),
    "A4": lambda: _named(group_from_permutations(4, ["(1 2 3)", "(1 2)(3 4)"]), "A4"),
    "Z2xZ2": lambda: group_abelian([2, 2]),
    "Z2xZ4": lambda: group_abelian([2, 4]),
    "Z2xZ2xZ2": lambda: group_abelian([2, 2, 2]),
    "Z3xZ3": lambda: group_abelian([3, 3]),
    "Z2xZ6": lambda: group_abelian([2, 6]),
}
for _n in range(1, 13):
    _BUILDERS[f"Z{_n}"] = lambda n=_n: group_cyclic(n)


def zoo_names() -> list[str]:
    return sorted(_BUILDERS, key=lambda s: (len(s), s))


def zoo_group(name: str) -> FiniteGroup:
    try:
        return _BUILDERS[name]()
    except KeyError:
        raise KeyError(f"unknown zoo group {name!r}") from None


def zoo(max_order: int | None = None) -> dict[str, FiniteGroup]:
    """All named groups, optionally restricted to order at most ``max_order``."""
    out = {}
    for name in zoo_names():
        g = zoo_group(name)
        if max_order is None or g.order <= max_order:
            out[name] = g
    return out
