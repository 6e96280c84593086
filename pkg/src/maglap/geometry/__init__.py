"""
Geometry for maglap: convex polygons, right cylinders and triangle meshes.
"""

from .polygon import (
    ConvexPolygon,
    CylinderDomain,
    regular_polygon,
    circumscribed_polygon,
    rectangle,
    convex_hull_polygon,
    random_convex_polygon,
)
from .mesh import TriangleMesh, triangulate, refine_uniform

__all__ = [
    # Domains
    "ConvexPolygon",
    "CylinderDomain",

    # Polygon constructors
    "regular_polygon",
    "circumscribed_polygon",
    "rectangle",
    "convex_hull_polygon",
    "random_convex_polygon",

    # Meshing
    "TriangleMesh",
    "triangulate",
    "refine_uniform",
]
