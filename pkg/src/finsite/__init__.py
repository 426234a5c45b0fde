"""finsite: exact-arithmetic workbench for cover rules, torsion pairs, and
sheaves of modules on finite categories."""

from . import errors, fincat, linalg, modrep, sheaves, sieves, topology, torsion, typen

__all__ = [
    "errors",
    "fincat",
    "linalg",
    "modrep",
    "sheaves",
    "sieves",
    "topology",
    "torsion",
    "typen",
]

__version__ = "0.1.0"
