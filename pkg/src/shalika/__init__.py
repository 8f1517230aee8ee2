"""Shalika germs, master symmetric functions and orbital integrals for GL_n."""

from .qpoly import QPoly, QTRatFun, RatFun
from .symfunc import SymFun, convert
from .germs import BranchSpec, GammaSpec, master_symfun, waldspurger_master
from .orbital import orbital_integral, weight_polynomials

__version__ = "0.1.0"


def clear_caches():
    """Drop every memo table (basis-change rows, Dyck counts, slope operators)."""
    from . import combinat, eha, germs, symfunc

    for mod in (combinat, eha, germs, symfunc):
        for obj in vars(mod).values():
            if callable(getattr(obj, "cache_clear", None)):
                obj.cache_clear()
    symfunc.clear_matrix_cache()


__all__ = [
    "QPoly",
    "RatFun",
    "QTRatFun",
    "SymFun",
    "convert",
    "BranchSpec",
    "GammaSpec",
    "master_symfun",
    "waldspurger_master",
    "orbital_integral",
    "weight_polynomials",
    "clear_caches",
]
