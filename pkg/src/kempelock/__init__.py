"""Kempe-locking of planar triangulations and the Birkhoff diamond."""

from .birkhoff import Configuration, birkhoff_diamond, find_appearances, is_fundamental
from .census import CensusRecord, check_conjecture, run_census, verify_certificate
from .coloring import count_distinct, enumerate_identified
from .connectivity import classify
from .generator import generate_all, sample_random, split_vertex
from .kempe import Verdict, chain_at, interchange, is_kempe_locked
from .plane_graph import (
    MarkedNearTriangulation,
    PlaneTriangulation,
    build_triangulation,
    canonical_code,
    contract_edge,
    delete_edge,
    delete_vertices,
)

__version__ = "0.1.0"
