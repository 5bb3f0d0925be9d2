"""Binary masks: representation, file I/O, connected components, patch tiling.

Coordinate convention: 2D masks are indexed (row, col), 3D masks
(slice, row, col); this matches numpy C-order and is assumed by every
module downstream.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import ndimage

from .errors import (
    EmptyComponent,
    LayoutMismatch,
    TruncatedPayload,
    UnknownMagic,
    ZeroDimension,
)

P4_MAGIC = b"P4"
VSR3D_MAGIC = b"VSR3D"


class BinaryMask:
    """A 2D or 3D voxel grid of {0,1}, stored as a bool ndarray."""

    __slots__ = ("data",)

    def __init__(self, data: np.ndarray):
        arr = np.ascontiguousarray(np.asarray(data, dtype=bool))
        if arr.ndim not in (2, 3):
            raise ZeroDimension(f"mask must be 2D or 3D, got {arr.ndim}D")
        if any(d <= 0 for d in arr.shape):
            raise ZeroDimension(f"zero-sized axis in dims {arr.shape}")
        self.data = arr

    @classmethod
    def zeros(cls, dims) -> "BinaryMask":
        return cls(np.zeros(tuple(dims), dtype=bool))

    @property
    def dims(self) -> tuple[int, ...]:
        return self.data.shape

    @property
    def ndim(self) -> int:
        return self.data.ndim

    def foreground_count(self) -> int:
        return int(self.data.sum())

    def copy(self) -> "BinaryMask":
        return BinaryMask(self.data.copy())

    def __eq__(self, other) -> bool:
        if not isinstance(other, BinaryMask):
            return NotImplemented
        return self.dims == other.dims and bool(np.array_equal(self.data, other.data))

    def __repr__(self) -> str:
        return f"BinaryMask(dims={self.dims}, foreground={self.foreground_count()})"


@dataclass(frozen=True)
class BoundingBox:
    """Inclusive per-axis (min, max) voxel bounds."""

    mins: tuple[int, ...]
    maxs: tuple[int, ...]

    def __post_init__(self):
        assert len(self.mins) == len(self.maxs)
        assert all(a <= b for a, b in zip(self.mins, self.maxs))

    @property
    def ndim(self) -> int:
        return len(self.mins)

    def slices(self) -> tuple[slice, ...]:
        return tuple(slice(a, b + 1) for a, b in zip(self.mins, self.maxs))

    def extents(self) -> tuple[int, ...]:
        return tuple(b - a + 1 for a, b in zip(self.mins, self.maxs))

    def contains(self, point) -> bool:
        return all(a <= p <= b for p, a, b in zip(point, self.mins, self.maxs))

    def padded(self, pad: int, dims) -> "BoundingBox":
        """Grow by `pad` per side, clipped to [0, dims)."""
        mins = tuple(max(0, a - pad) for a in self.mins)
        maxs = tuple(min(d - 1, b + pad) for b, d in zip(self.maxs, dims))
        return BoundingBox(mins, maxs)

    @classmethod
    def union(cls, boxes: list["BoundingBox"]) -> "BoundingBox":
        mins = tuple(min(b.mins[i] for b in boxes) for i in range(boxes[0].ndim))
        maxs = tuple(max(b.maxs[i] for b in boxes) for i in range(boxes[0].ndim))
        return cls(mins, maxs)


@dataclass
class Component:
    id: int
    points: np.ndarray  # (n, ndim) int voxel coordinates
    voxel_count: int
    bbox: BoundingBox


@dataclass
class ComponentLabeling:
    """Per-voxel component ids (0 = background) plus per-component data."""

    label_map: np.ndarray
    components: list[Component]


def minimum_enclosing_box(component: Component) -> BoundingBox:
    """Tight per-axis min/max box of a component's points."""
    pts = np.asarray(component.points)
    if pts.size == 0:
        raise EmptyComponent("component has no points")
    return BoundingBox(tuple(int(v) for v in pts.min(axis=0)),
                       tuple(int(v) for v in pts.max(axis=0)))


def label_components(mask: BinaryMask, connectivity: str = "full") -> ComponentLabeling:
    """Label connected foreground under `faces` (4/6) or `full` (8/26) adjacency.

    Component ids are 1..C in first-encounter raster order.
    """
    if connectivity not in ("faces", "full"):
        raise ValueError(f"connectivity must be 'faces' or 'full', got {connectivity!r}")
    rank = mask.ndim
    order = 1 if connectivity == "faces" else rank
    structure = ndimage.generate_binary_structure(rank, order)
    raw, n = ndimage.label(mask.data, structure=structure)
    if n == 0:
        return ComponentLabeling(raw.astype(np.int32), [])

    # renumber so ids follow first raster-order encounter
    flat = raw.ravel()
    fg = np.flatnonzero(flat)
    first_idx = np.full(n + 1, flat.size, dtype=np.int64)
    # reversed so the earliest index wins
    first_idx[flat[fg[::-1]]] = fg[::-1]
    rank_order = np.argsort(first_idx[1:], kind="stable")
    remap = np.zeros(n + 1, dtype=np.int32)
    remap[rank_order + 1] = np.arange(1, n + 1, dtype=np.int32)
    label_map = remap[raw]

    objects = ndimage.find_objects(label_map)
    components = []
    for cid in range(1, n + 1):
        sl = objects[cid - 1]
        local = np.argwhere(label_map[sl] == cid)
        pts = local + np.array([s.start for s in sl])
        bbox = BoundingBox(tuple(int(v) for v in pts.min(axis=0)),
                           tuple(int(v) for v in pts.max(axis=0)))
        components.append(Component(cid, pts, len(pts), bbox))
    return ComponentLabeling(label_map, components)


# ---------------------------------------------------------------------------
# file formats

def decode_mask(raw: bytes) -> BinaryMask:
    """Decode bytes as a portable bitmap (P4) or the VSR3D raw volume format."""
    if raw.startswith(P4_MAGIC) and (len(raw) == 2 or raw[2:3] in b" \t\n\r#"):
        return _decode_p4(raw)
    if raw.startswith(VSR3D_MAGIC):
        return _decode_vsr3d(raw)
    raise UnknownMagic(f"unsupported magic {raw[:6]!r}")


def encode_mask(mask: BinaryMask) -> bytes:
    return _encode_p4(mask) if mask.ndim == 2 else _encode_vsr3d(mask)


def _decode_p4(raw: bytes) -> BinaryMask:
    # header: magic, then whitespace-separated width and height; '#' starts
    # a comment that runs to end of line
    pos = 2
    tokens: list[int] = []
    while len(tokens) < 2:
        while pos < len(raw) and raw[pos:pos + 1].isspace():
            pos += 1
        if pos < len(raw) and raw[pos:pos + 1] == b"#":
            nl = raw.find(b"\n", pos)
            if nl < 0:
                raise TruncatedPayload("unterminated comment in P4 header")
            pos = nl + 1
            continue
        start = pos
        while pos < len(raw) and not raw[pos:pos + 1].isspace():
            pos += 1
        if start == pos:
            raise TruncatedPayload("P4 header ended before dims")
        tokens.append(int(raw[start:pos]))
    pos += 1  # single whitespace after height
    width, height = tokens
    if width <= 0 or height <= 0:
        raise ZeroDimension(f"P4 dims {width}x{height}")
    row_bytes = (width + 7) // 8
    need = row_bytes * height
    payload = raw[pos:pos + need]
    if len(payload) < need:
        raise TruncatedPayload(f"P4 payload {len(payload)} bytes, need {need}")
    bits = np.unpackbits(np.frombuffer(payload, dtype=np.uint8).reshape(height, row_bytes),
                         axis=1)[:, :width]
    return BinaryMask(bits.astype(bool))


def _encode_p4(mask: BinaryMask) -> bytes:
    h, w = mask.dims
    packed = np.packbits(mask.data.astype(np.uint8), axis=1)
    return b"P4\n%d %d\n" % (w, h) + packed.tobytes()


def _decode_vsr3d(raw: bytes) -> BinaryMask:
    header_len = len(VSR3D_MAGIC) + 12
    if len(raw) < header_len:
        raise TruncatedPayload("VSR3D header truncated")
    dims = np.frombuffer(raw, dtype="<u4", count=3, offset=len(VSR3D_MAGIC))
    z, y, x = (int(v) for v in dims)
    if z <= 0 or y <= 0 or x <= 0:
        raise ZeroDimension(f"VSR3D dims {(z, y, x)}")
    need = z * y * x
    payload = raw[header_len:header_len + need]
    if len(payload) < need:
        raise TruncatedPayload(f"VSR3D payload {len(payload)} bytes, need {need}")
    vox = np.frombuffer(payload, dtype=np.uint8).reshape(z, y, x)
    return BinaryMask(vox != 0)


def _encode_vsr3d(mask: BinaryMask) -> bytes:
    dims = np.asarray(mask.dims, dtype="<u4")
    return VSR3D_MAGIC + dims.tobytes() + mask.data.astype(np.uint8).tobytes()


# ---------------------------------------------------------------------------
# patch tiling

@dataclass
class PatchLayout:
    window: tuple[int, ...]
    origins: list[tuple[int, ...]]
    padded_dims: tuple[int, ...]
    orig_dims: tuple[int, ...]


def tile_patches(mask: BinaryMask) -> tuple[PatchLayout, list[BinaryMask]]:
    """Split a mask into non-overlapping window-sized patches (zero padded).

    2D windows are ceil(extent/4) per axis (a 4x4 grid, 1/16 of the area);
    3D windows are 64x64x64.
    """
    dims = mask.dims
    if mask.ndim == 2:
        window = tuple(-(-d // 4) for d in dims)
        counts = (4, 4)
    else:
        window = (64, 64, 64)
        counts = tuple(-(-d // 64) for d in dims)
    padded_dims = tuple(w * c for w, c in zip(window, counts))
    padded = np.zeros(padded_dims, dtype=bool)
    padded[tuple(slice(0, d) for d in dims)] = mask.data

    origins = []
    patches = []
    for idx in np.ndindex(*counts):
        origin = tuple(int(i * w) for i, w in zip(idx, window))
        origins.append(origin)
        sl = tuple(slice(o, o + w) for o, w in zip(origin, window))
        patches.append(BinaryMask(padded[sl].copy()))
    return PatchLayout(window, origins, padded_dims, dims), patches


def recombine(layout: PatchLayout, patches: list[BinaryMask]) -> BinaryMask:
    """Place patches back at their origins and crop padding away.

    Tiles are disjoint so placement is exact; overlapping layouts (none are
    produced by tile_patches) would combine with voxel-wise OR.
    """
    if len(patches) != len(layout.origins):
        raise LayoutMismatch(f"{len(patches)} patches for {len(layout.origins)} origins")
    out = np.zeros(layout.padded_dims, dtype=bool)
    for origin, patch in zip(layout.origins, patches):
        if patch.dims != tuple(layout.window):
            raise LayoutMismatch(f"patch dims {patch.dims} != window {layout.window}")
        sl = tuple(slice(o, o + w) for o, w in zip(origin, layout.window))
        out[sl] |= patch.data
    return BinaryMask(out[tuple(slice(0, d) for d in layout.orig_dims)].copy())
