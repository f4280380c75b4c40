"""Perfect difference sets, triangle presentations and their groups."""

from .gf import FieldCtx, make_field
from .pds import DiffSet, as_pds, enumerate_pds_fixed_by_q, verify_pds
from .plane import CyclicPlane, build_plane
from .tripres import Alpha, TrianglePres, construct, equivalent, verify

__version__ = "0.1.0"

__all__ = [
    "Alpha", "CyclicPlane", "DiffSet", "FieldCtx", "TrianglePres", "as_pds",
    "build_plane", "construct", "enumerate_pds_fixed_by_q", "equivalent",
    "make_field", "verify", "verify_pds",
]
