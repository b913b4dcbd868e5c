"""Classical edge detector with the same shift-to-darker semantics as the quantum pipeline.

Shares no arithmetic with the circuit builders; it works on the pixel grid with numpy.
"""

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from neqr_edge.images.layouts import Axis
from neqr_edge.images.models import EdgeMap, GrayImage

# axis x walks columns, axis y walks rows of pixels[y][x]
_ARRAY_AXIS = {Axis.X: 1, Axis.Y: 0}


class ReferenceResult(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)

    grad_x: np.ndarray = Field(..., description="I(x+1, y) - I(x, y) with wrap")
    grad_y: np.ndarray = Field(..., description="I(x, y+1) - I(x, y) with wrap")
    edge_x: EdgeMap
    edge_y: EdgeMap
    edge: EdgeMap


def reference_gradients(image: GrayImage, axis: Axis) -> np.ndarray:
    """Signed cyclic differences next - current along ``axis``."""
    array_axis = _ARRAY_AXIS[Axis(axis)]
    return np.roll(image.pixels, -1, axis=array_axis) - image.pixels


def _axis_edges(image: GrayImage, axis: Axis, threshold: int) -> tuple[np.ndarray, EdgeMap]:
    diff = reference_gradients(image, axis)
    strong = np.abs(diff) > threshold
    # a darker neighbour ahead moves the mark one step forward
    marks = (strong & (diff >= 0)) | np.roll(strong & (diff < 0), 1, axis=_ARRAY_AXIS[Axis(axis)])
    return diff, EdgeMap(side_log2=image.side_log2, bits=marks)


def reference_edge_map(image: GrayImage, threshold: int) -> ReferenceResult:
    if not 0 <= threshold < 1 << image.bit_depth:
        raise ValueError(f"Threshold {threshold} outside [0, {1 << image.bit_depth}) for q={image.bit_depth}")
    grad_x, edge_x = _axis_edges(image, Axis.X, threshold)
    grad_y, edge_y = _axis_edges(image, Axis.Y, threshold)
    return ReferenceResult(grad_x=grad_x, grad_y=grad_y, edge_x=edge_x, edge_y=edge_y, edge=edge_x.union(edge_y))
