"""Weber hexads, the (16)_6 configuration lattice, Hessian degeneration and inscribed conics."""

from .kernels import BACKEND

__all__ = ["BACKEND"]
__version__ = "0.1.0"
