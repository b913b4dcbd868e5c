from pydantic import BaseModel, ConfigDict, Field, model_validator


class Threshold(BaseModel):
    """Threshold T on a q-bit magnitude; ``bits`` reads MSB first (t_{q-1} ... t_0)."""

    model_config = ConfigDict(frozen=True)

    value: int = Field(..., ge=0, description="T")
    width: int = Field(..., ge=1, description="q, width of the magnitude register")

    @model_validator(mode="after")
    def check_range(self) -> "Threshold":
        if self.value >= 1 << self.width:
            raise ValueError(f"Threshold {self.value} does not fit in {self.width} bits")
        return self

    @classmethod
    def parse(cls, text: str | int, width: int) -> "Threshold":
        """Accept a decimal integer, a '0b' literal, or an MSB-first bit string of exactly ``width`` digits."""
        if isinstance(text, int):
            return cls(value=text, width=width)
        text = text.strip()
        if text.lower().startswith("0b"):
            return cls(value=int(text[2:], 2), width=width)
        if len(text) == width and set(text) <= {"0", "1"}:
            return cls(value=int(text, 2), width=width)
        return cls(value=int(text, 10), width=width)

    @property
    def bits(self) -> str:
        return format(self.value, f"0{self.width}b")

    def bit(self, i: int) -> int:
        """t_i, with i = 0 the least significant bit."""
        return (self.value >> i) & 1

    @property
    def zero_bits(self) -> int:
        return self.bits.count("0")


class PartitionSets(BaseModel):
    above: frozenset[int] = Field(..., description="Magnitudes s with s > T (edges)")
    at_or_below: frozenset[int] = Field(..., description="Magnitudes s with s <= T")
