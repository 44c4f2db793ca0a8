"""Tagged descriptions of the manifolds the package can identify."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

TAGS = (
    "sphere_product_torus",
    "N_of_m",
    "N_kpq",
    "surface_bundle",
    "bundle_generic",
    "immersion_only",
    "unclassified",
)


@dataclass(frozen=True)
class TopologyDescription:
    tag: str
    parameters: dict[str, Any] = field(default_factory=dict)
    orientation_note: str = ""
    description: str = ""

    def __post_init__(self) -> None:
        if self.tag not in TAGS:
            raise ValueError(f"unknown topology tag {self.tag!r}")

    def to_json(self) -> dict[str, Any]:
        return {
            "tag": self.tag,
            "parameters": self.parameters,
            "orientation_note": self.orientation_note,
            "description": self.description,
        }


def sphere_product_torus(sphere_dims: list[int], torus_rank: int = 0) -> TopologyDescription:
    """``S^{d_1} x ... x S^{d_k} x T^r`` with the sphere dimensions sorted."""
    dims = sorted(sphere_dims)
    pieces = [f"S^{d}" for d in dims]
    if torus_rank:
        pieces.append(f"T^{torus_rank}")
    return TopologyDescription(
        "sphere_product_torus",
        {"sphere_dims": dims, "torus_rank": torus_rank},
        description=" × ".join(pieces) if pieces else "point",
    )
