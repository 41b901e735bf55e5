"""Grayscale image I/O and edge-map extraction.

Images are 8-bit grayscale.  Binary PGM (P5) is the native format; PNG is
read/written through pillow when it is installed.  Edge maps are either
computed with the Canny detector below or loaded from a strictly binary
({0, 255}) PGM, which lets callers bypass Canny tuning entirely.
"""

from dataclasses import dataclass
from pathlib import Path

import numpy as np
from scipy import ndimage

# Canny defaults: thresholds are fractions of the peak gradient magnitude
# expressed on the [0, 255] scale (the magnitude image is normalized so its
# maximum is 255 before thresholding).
DEFAULT_SIGMA = 1.0
DEFAULT_LOW = 0.1 * 255.0
DEFAULT_HIGH = 0.3 * 255.0


class FormatError(ValueError):
    """Raised for malformed or unsupported image files."""


@dataclass(frozen=True)
class GrayImage:
    """8-bit grayscale image; ``pixels`` is a (height, width) uint8 array."""

    pixels: np.ndarray

    def __post_init__(self):
        if self.pixels.ndim != 2:
            raise ValueError("pixels must be a 2-D array")

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    @property
    def height(self) -> int:
        return self.pixels.shape[0]


@dataclass(frozen=True)
class EdgeMap:
    """Edge pixels of an image, as an ordered vector and an occupancy grid.

    ``points`` is an (n, 2) int64 array of (x, y) coordinates in row-major
    order (y ascending, then x ascending); ``grid`` is a (height, width)
    uint8 array with exactly those cells nonzero.  Instances are immutable
    and safe to share across concurrent detector runs.
    """

    width: int
    height: int
    points: np.ndarray
    grid: np.ndarray

    @property
    def count(self) -> int:
        return len(self.points)

    @classmethod
    def from_grid(cls, grid) -> "EdgeMap":
        g = np.ascontiguousarray(grid != 0, dtype=np.uint8)
        ys, xs = np.nonzero(g)
        points = np.column_stack([xs, ys]).astype(np.int64)
        g.setflags(write=False)
        points.setflags(write=False)
        return cls(width=g.shape[1], height=g.shape[0], points=points, grid=g)

    @classmethod
    def from_points(cls, width, height, points) -> "EdgeMap":
        g = np.zeros((height, width), dtype=np.uint8)
        pts = np.asarray(points, dtype=np.int64).reshape(-1, 2)
        g[pts[:, 1], pts[:, 0]] = 1
        return cls.from_grid(g)


# ---------------------------------------------------------------------------
# PGM / PNG I/O

def _read_pgm(data: bytes) -> np.ndarray:
    if not data.startswith(b"P5"):
        raise FormatError("not a binary PGM (P5) file")
    # header: magic, width, height, maxval; '#' comments allowed between tokens
    pos = 2
    fields = []
    while len(fields) < 3:
        while pos < len(data) and data[pos : pos + 1].isspace():
            pos += 1
        if pos < len(data) and data[pos : pos + 1] == b"#":
            while pos < len(data) and data[pos] != 0x0A:
                pos += 1
            continue
        start = pos
        while pos < len(data) and not data[pos : pos + 1].isspace():
            pos += 1
        if start == pos:
            raise FormatError("truncated PGM header")
        try:
            fields.append(int(data[start:pos]))
        except ValueError:
            raise FormatError("malformed PGM header") from None
    pos += 1  # single whitespace byte after maxval
    width, height, maxval = fields
    if width < 1 or height < 1:
        raise FormatError("invalid PGM dimensions")
    if not (0 < maxval <= 255):
        raise FormatError(f"unsupported PGM maxval {maxval} (need 1..255)")
    body = data[pos : pos + width * height]
    if len(body) != width * height:
        raise FormatError("truncated PGM pixel data")
    return np.frombuffer(body, dtype=np.uint8).reshape(height, width).copy()


def load_gray(path) -> GrayImage:
    """Load a grayscale image from binary PGM or (with pillow) PNG.

    Color PNG inputs are converted by channel average.  Raises OSError for
    unreadable files and FormatError for malformed or unsupported content.
    """
    data = Path(path).read_bytes()
    if data.startswith(b"P5"):
        return GrayImage(pixels=_read_pgm(data))
    if data.startswith(b"\x89PNG"):
        try:
            from PIL import Image
        except ImportError:
            raise FormatError("PNG support requires the 'pillow' package") from None
        with Image.open(path) as im:
            arr = np.asarray(im)
        if arr.ndim == 3:
            arr = arr[..., :3].mean(axis=2)
        return GrayImage(pixels=np.clip(np.round(arr), 0, 255).astype(np.uint8))
    raise FormatError("unsupported image format (need PGM P5 or PNG)")


def save_gray(img: GrayImage, path) -> None:
    """Write an image as binary PGM (or PNG when the path ends in .png)."""
    path = Path(path)
    if path.suffix.lower() == ".png":
        try:
            from PIL import Image
        except ImportError:
            raise FormatError("PNG support requires the 'pillow' package") from None
        Image.fromarray(img.pixels, mode="L").save(path)
        return
    header = f"P5\n{img.width} {img.height}\n255\n".encode("ascii")
    path.write_bytes(header + img.pixels.tobytes())


def load_edge_map(path) -> EdgeMap:
    """Load a precomputed binary edge map (PGM with values exactly {0, 255})."""
    pixels = _read_pgm(Path(path).read_bytes())
    if not np.isin(pixels, (0, 255)).all():
        raise FormatError("edge map must contain only the values 0 and 255")
    return EdgeMap.from_grid(pixels == 255)


def render_edge_map(edges: EdgeMap) -> GrayImage:
    """Render an edge map back to a binary {0, 255} grayscale image."""
    return GrayImage(pixels=(edges.grid * np.uint8(255)))


def save_edge_map(edges: EdgeMap, path) -> None:
    save_gray(render_edge_map(edges), path)


# ---------------------------------------------------------------------------
# Canny edge detection

def canny_edges(
    img: GrayImage,
    low: float = DEFAULT_LOW,
    high: float = DEFAULT_HIGH,
    sigma: float = DEFAULT_SIGMA,
) -> EdgeMap:
    """Classical Canny: Gaussian smoothing, 3x3 Sobel, non-maximum
    suppression over 4 quantized directions, and hysteresis from strong
    pixels.

    ``low``/``high`` are on the [0, 255] scale and are compared against the
    gradient magnitude normalized so its peak is 255.  The outermost 1-pixel
    border never carries edges.
    """
    if img.width < 3 or img.height < 3:
        raise ValueError("image must be at least 3x3 for edge detection")
    if not (0.0 <= low <= high <= 255.0):
        raise ValueError("need 0 <= low <= high <= 255")
    if sigma <= 0.0:
        raise ValueError("sigma must be positive")

    smooth = ndimage.gaussian_filter(img.pixels.astype(np.float64), sigma, mode="nearest")
    gx = ndimage.sobel(smooth, axis=1, mode="nearest")
    gy = ndimage.sobel(smooth, axis=0, mode="nearest")
    mag = np.hypot(gx, gy)
    peak = mag.max()
    if peak > 0.0:
        mag *= 255.0 / peak

    nms = _suppress_non_maxima(mag, np.degrees(np.arctan2(gy, gx)) % 180.0)

    strong = nms >= high
    edges = np.zeros(mag.shape, dtype=bool)
    if strong.any():
        weak = nms >= low
        labels, _ = ndimage.label(weak, structure=np.ones((3, 3), dtype=int))
        hit = np.unique(labels[strong])
        edges = np.isin(labels, hit[hit > 0])
    edges[0, :] = edges[-1, :] = False
    edges[:, 0] = edges[:, -1] = False
    return EdgeMap.from_grid(edges)


def _suppress_non_maxima(mag, angle):
    """Zero out pixels that are not local maxima along the gradient direction."""
    h, w = mag.shape
    padded = np.pad(mag, 1, mode="constant")

    def shifted(dy, dx):
        return padded[1 + dy : 1 + dy + h, 1 + dx : 1 + dx + w]

    # (angle band, neighbor offsets along the gradient) with offsets as (dy, dx)
    bands = [
        ((angle < 22.5) | (angle >= 157.5), (0, 1), (0, -1)),
        ((angle >= 22.5) & (angle < 67.5), (1, 1), (-1, -1)),
        ((angle >= 67.5) & (angle < 112.5), (1, 0), (-1, 0)),
        ((angle >= 112.5) & (angle < 157.5), (1, -1), (-1, 1)),
    ]
    keep = np.zeros(mag.shape, dtype=bool)
    for band, (dy1, dx1), (dy2, dx2) in bands:
        keep |= band & (mag >= shifted(dy1, dx1)) & (mag >= shifted(dy2, dx2))
    return np.where(keep & (mag > 0.0), mag, 0.0)
