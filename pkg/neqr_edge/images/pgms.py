"""PGM (P2 ASCII / P5 binary) codec for grayscale images with maxval <= 255."""

from pathlib import Path

import numpy as np

from neqr_edge.errors import ImageFormatError
from neqr_edge.images.models import EdgeMap, GrayImage
from neqr_edge.loggers import get_logger

logger = get_logger(__name__)

MAX_MAXVAL = 255


def _header_tokens(data: bytes, count: int) -> tuple[list[bytes], int]:
    """Read ``count`` whitespace-separated header tokens, skipping '#' comments.

    Returns the tokens and the offset of the raster: just past the single whitespace byte
    that ends the last token, or past the end of a comment that directly follows it.
    """
    tokens: list[bytes] = []
    pos = 0
    while len(tokens) < count:
        while pos < len(data) and data[pos : pos + 1].isspace():
            pos += 1
        if pos >= len(data):
            raise ImageFormatError("Truncated PGM header")
        if data[pos : pos + 1] == b"#":
            end = data.find(b"\n", pos)
            pos = len(data) if end < 0 else end + 1
            continue
        start = pos
        while pos < len(data) and not data[pos : pos + 1].isspace() and data[pos : pos + 1] != b"#":
            pos += 1
        tokens.append(data[start:pos])
    if data[pos : pos + 1] == b"#":
        end = data.find(b"\n", pos)
        return tokens, len(data) if end < 0 else end + 1
    return tokens, pos + 1


def _parse_int(token: bytes, what: str, where: str = "header") -> int:
    try:
        return int(token)
    except ValueError as e:
        raise ImageFormatError(f"Invalid {what} in PGM {where}: {token!r}") from e


def bit_depth_for(maxval: int) -> int:
    """Smallest q with 2^q >= maxval + 1."""
    return max(1, maxval.bit_length())


def parse_pgm(data: bytes) -> GrayImage:
    tokens, offset = _header_tokens(data, 4)
    magic = tokens[0]
    if magic not in (b"P2", b"P5"):
        raise ImageFormatError(f"Unsupported PGM magic: {magic!r}")
    width = _parse_int(tokens[1], "width")
    height = _parse_int(tokens[2], "height")
    maxval = _parse_int(tokens[3], "maxval")
    if not 1 <= maxval <= MAX_MAXVAL:
        raise ImageFormatError(f"maxval must lie in [1, {MAX_MAXVAL}], got {maxval}")
    if width != height or width < 2 or width & (width - 1):
        raise ImageFormatError(f"Image must be square with a power-of-two side, got {width}x{height}")

    if magic == b"P5":
        raw = data[offset : offset + width * height]
        if len(raw) != width * height:
            raise ImageFormatError(f"Expected {width * height} bytes of pixel data, got {len(raw)}")
        values = np.frombuffer(raw, dtype=np.uint8).astype(np.int64)
    else:
        body = b"\n".join(line.split(b"#", 1)[0] for line in data[offset:].splitlines())
        values = np.array([_parse_int(token, "pixel", "raster") for token in body.split()], dtype=np.int64)
        if values.size != width * height:
            raise ImageFormatError(f"Expected {width * height} pixel values, got {values.size}")

    if values.size and (values.min() < 0 or values.max() > maxval):
        raise ImageFormatError(f"Pixel value exceeds maxval {maxval}")
    return GrayImage.from_pixels(values.reshape(height, width), bit_depth=bit_depth_for(maxval))


def load_pgm(path: str | Path) -> GrayImage:
    path = Path(path)
    logger.debug(f"Loading PGM: {path}")
    image = parse_pgm(path.read_bytes())
    logger.info(f"Loaded {path}: {image.side}x{image.side}, q={image.bit_depth}")
    return image


def format_pgm(grid: np.ndarray, maxval: int) -> str:
    height, width = grid.shape
    lines = ["P2", f"{width} {height}", str(maxval)]
    lines.extend(" ".join(str(int(value)) for value in row) for row in grid)
    return "\n".join(lines) + "\n"


def write_pgm(image: GrayImage | EdgeMap, path: str | Path) -> Path:
    """Write P2. Images keep maxval 2^q - 1; edge maps are written as 0/255."""
    path = Path(path)
    if isinstance(image, EdgeMap):
        text = format_pgm(image.bits.astype(np.int64) * MAX_MAXVAL, MAX_MAXVAL)
    else:
        text = format_pgm(image.pixels, (1 << image.bit_depth) - 1)
    path.write_text(text, encoding="ascii")
    logger.info(f"Wrote {path}")
    return path
