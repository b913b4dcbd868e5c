import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from neqr_edge.errors import ImageFormatError


def _square_grid(value: object, dtype: type) -> np.ndarray:
    grid = np.array(value, dtype=dtype)
    if grid.ndim != 2 or grid.shape[0] != grid.shape[1]:
        raise ImageFormatError(f"Expected a square grid, got shape {grid.shape}")
    return grid


class GrayImage(BaseModel):
    """2^n x 2^n grid of q-bit intensities, addressed as ``pixels[y][x]``."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    side_log2: int = Field(..., ge=1, description="n, the image is 2^n pixels wide and tall")
    bit_depth: int = Field(..., ge=1, le=8, description="q, intensities lie in [0, 2^q)")
    pixels: np.ndarray = Field(..., description="Integer grid indexed [y][x]")

    @field_validator("pixels", mode="before")
    @classmethod
    def to_array(cls, value: object) -> np.ndarray:
        return _square_grid(value, np.int64)

    @model_validator(mode="after")
    def check_pixels(self) -> "GrayImage":
        side = 1 << self.side_log2
        if self.pixels.shape != (side, side):
            raise ImageFormatError(f"Expected {side}x{side} pixels for n={self.side_log2}, got {self.pixels.shape}")
        if self.pixels.min() < 0 or self.pixels.max() >= 1 << self.bit_depth:
            raise ImageFormatError(f"Pixel values must lie in [0, {1 << self.bit_depth}) for q={self.bit_depth}")
        return self

    @classmethod
    def from_pixels(cls, pixels: object, bit_depth: int) -> "GrayImage":
        grid = _square_grid(pixels, np.int64)
        side = grid.shape[0]
        if side < 2 or side & (side - 1):
            raise ImageFormatError(f"Image side must be a power of two >= 2, got {side}")
        return cls(side_log2=side.bit_length() - 1, bit_depth=bit_depth, pixels=grid)

    @property
    def side(self) -> int:
        return 1 << self.side_log2

    def intensity(self, x: int, y: int) -> int:
        return int(self.pixels[y % self.side, x % self.side])

    def reduce_bit_depth(self, bit_depth: int) -> "GrayImage":
        """Drop low-order bits so intensities fit in ``bit_depth`` bits."""
        if bit_depth > self.bit_depth:
            raise ImageFormatError(f"Cannot raise bit depth from {self.bit_depth} to {bit_depth}")
        shift = self.bit_depth - bit_depth
        return GrayImage(side_log2=self.side_log2, bit_depth=bit_depth, pixels=self.pixels >> shift)


class EdgeMap(BaseModel):
    """Binary 2^n x 2^n readout, ``bits[y][x]``."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    side_log2: int = Field(..., ge=1, description="n, matches the source image")
    bits: np.ndarray = Field(..., description="Boolean grid indexed [y][x]")

    @field_validator("bits", mode="before")
    @classmethod
    def to_array(cls, value: object) -> np.ndarray:
        return _square_grid(value, bool)

    @model_validator(mode="after")
    def check_bits(self) -> "EdgeMap":
        side = 1 << self.side_log2
        if self.bits.shape != (side, side):
            raise ImageFormatError(f"Expected {side}x{side} edge map for n={self.side_log2}, got {self.bits.shape}")
        return self

    @classmethod
    def empty(cls, side_log2: int) -> "EdgeMap":
        side = 1 << side_log2
        return cls(side_log2=side_log2, bits=np.zeros((side, side), dtype=bool))

    @property
    def edge_count(self) -> int:
        return int(self.bits.sum())

    def union(self, other: "EdgeMap") -> "EdgeMap":
        return EdgeMap(side_log2=self.side_log2, bits=self.bits | other.bits)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, EdgeMap):
            return NotImplemented
        return self.side_log2 == other.side_log2 and bool(np.array_equal(self.bits, other.bits))
