"""Evaluations of zero-edge residues that are invariant under vertex pivots."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .dc import ordinary_tutte, relative_tutte_dc
from .graph import ColoredMultigraph
from .poly import D, ONE, PX, PZ, MultiPoly, alpha

__all__ = [
    "PsiMap",
    "NotPowerOfTwo",
    "zero_order",
    "psi_one",
    "psi_knot",
    "psi_alpha",
    "psi_chromatic",
    "psi_rank_z",
    "psi_nested_tutte",
    "PSI_REGISTRY",
    "get_psi",
]


class NotPowerOfTwo(ArithmeticError):
    pass


@dataclass(frozen=True)
class PsiMap:
    name: str
    fn: Callable[[ColoredMultigraph], MultiPoly]

    def __call__(self, g: ColoredMultigraph) -> MultiPoly:
        return self.fn(g)


_TM11: dict = {}


def zero_order(g: ColoredMultigraph) -> int:
    """Number of link components of the all-virtual diagram with face graph ``g``.

    Each connected component contributes ``log2|T(-1,-1)| + 1``.
    """
    total = 0
    for comp in g.component_subgraphs():
        t = abs(ordinary_tutte(comp, -1, -1, cache=_TM11))
        if t <= 0 or t & (t - 1):
            raise NotPowerOfTwo(f"|T(-1,-1)| = {t} is not a power of two")
        total += t.bit_length()  # log2(t) + 1
    return total


def _one(g: ColoredMultigraph) -> MultiPoly:
    return ONE


def _knot(g: ColoredMultigraph) -> MultiPoly:
    return D ** (zero_order(g) - 1)


def _alpha(g: ColoredMultigraph) -> MultiPoly:
    return alpha(g.num_components())


def _chromatic(g: ColoredMultigraph) -> MultiPoly:
    sign = -1 if len(g) % 2 else 1
    return (-PX) ** g.num_components() * sign


def _rank_z(g: ColoredMultigraph) -> MultiPoly:
    return PZ ** g.rank()


def _nested_tutte(g: ColoredMultigraph) -> MultiPoly:
    # every remaining edge is treated as regular, keeping its own colour
    return relative_tutte_dc(g, psi_one, zero=(), localized=True)


psi_one = PsiMap("one", _one)
psi_knot = PsiMap("knot", _knot)
psi_alpha = PsiMap("alpha", _alpha)
psi_chromatic = PsiMap("chromatic", _chromatic)
psi_rank_z = PsiMap("rank-z", _rank_z)
psi_nested_tutte = PsiMap("nested-tutte", _nested_tutte)

PSI_REGISTRY = {p.name: p for p in (psi_knot, psi_one, psi_alpha, psi_chromatic, psi_rank_z,
                                    psi_nested_tutte)}


def get_psi(name: str) -> PsiMap:
    try:
        return PSI_REGISTRY[name]
    except KeyError:
        raise ValueError(f"unknown psi {name!r}; choose from {', '.join(PSI_REGISTRY)}") from None
