"""Instance generation and experiment drivers."""

from .generate import (
    dodecahedron_map,
    enumerate_graphs_girth5,
    enumerate_plane_girth5,
    enumerate_plane_girth5_all_embeddings,
    face_orbits,
    map_automorphisms,
    map_certificate,
    one_embedding,
    planar_embeddings,
    random_plane_girth5,
)
from .lists import ListPolicy, enumerate_lists
from .suites import SUITES, SuiteResult, Violation, run_suite

__all__ = [
    "SUITES",
    "ListPolicy",
    "SuiteResult",
    "Violation",
    "dodecahedron_map",
    "enumerate_graphs_girth5",
    "enumerate_lists",
    "enumerate_plane_girth5",
    "enumerate_plane_girth5_all_embeddings",
    "face_orbits",
    "map_automorphisms",
    "map_certificate",
    "one_embedding",
    "planar_embeddings",
    "random_plane_girth5",
    "run_suite",
]
