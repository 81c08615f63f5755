"""Frame-sequence I/O: 8-bit PNG directories plus raw float32 sidecars.

Frames are named frame_%06d.png, contiguous from zero.  When requested,
each frame also gets a frame_%06d.f32 sidecar holding the pre-quantization
values: an 8-byte magic, three little-endian uint32 dims (h, w, c), then
the float32 samples in (h, w, c) order.
"""

from __future__ import annotations

import re
import struct
from pathlib import Path

import numpy as np
from PIL import Image

from .errors import FrameIoError
from .video import ensure_video

FRAME_PATTERN = re.compile(r"frame_(\d{6})\.png\Z")
SIDECAR_MAGIC = b"VTF32\x00\x00\x00"


def frame_name(index: int) -> str:
    return f"frame_{index:06d}.png"


def quantize(v: np.ndarray) -> np.ndarray:
    """8-bit quantization: clamp to [0,1], scale, round half away from zero."""
    return np.floor(np.clip(v, 0.0, 1.0) * 255.0 + 0.5).astype(np.uint8)


def read_frames(directory) -> np.ndarray:
    """Load a frame directory as a float64 video in [0, 1]."""
    directory = Path(directory)
    if not directory.is_dir():
        raise FrameIoError(f"{directory}: not a directory")
    indexed = {}
    for entry in directory.iterdir():
        match = FRAME_PATTERN.match(entry.name)
        if match:
            indexed[int(match.group(1))] = entry
    if not indexed:
        raise FrameIoError(f"{directory}: no frame_??????.png files found")
    for i in range(len(indexed)):
        if i not in indexed:
            raise FrameIoError(
                f"{directory / frame_name(i)}: missing frame index {i}"
            )
    planes = []
    shape = None
    for i in range(len(indexed)):
        path = indexed[i]
        try:
            with Image.open(path) as img:
                img.load()
                mode = img.mode
                arr = np.asarray(img)
        except OSError as exc:
            raise FrameIoError(f"{path}: unreadable PNG ({exc})")
        if mode == "L":
            arr = arr[:, :, None]
        elif mode != "RGB":
            raise FrameIoError(
                f"{path}: unsupported PNG mode {mode!r}, need 8-bit L or RGB"
            )
        if shape is None:
            shape = arr.shape
        elif arr.shape != shape:
            raise FrameIoError(
                f"{path}: frame shape {arr.shape} differs from first frame "
                f"shape {shape}"
            )
        planes.append(arr.astype(np.float64) / 255.0)
    return ensure_video(np.stack(planes, axis=0))


def write_frames(video, directory, sidecar: bool = False) -> None:
    """Write 8-bit PNG frames (and float32 sidecars when ``sidecar``)."""
    video = ensure_video(video)
    directory = Path(directory)
    try:
        directory.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise FrameIoError(f"{directory}: cannot create directory ({exc})")
    quantized = quantize(video)
    for t in range(video.shape[0]):
        frame = quantized[t]
        if frame.shape[2] == 1:
            img = Image.fromarray(frame[:, :, 0], mode="L")
        else:
            img = Image.fromarray(frame, mode="RGB")
        path = directory / frame_name(t)
        try:
            img.save(path)
        except OSError as exc:
            raise FrameIoError(f"{path}: write failed ({exc})")
        if sidecar:
            write_sidecar(video[t], path.with_suffix(".f32"))


def write_sidecar(frame_hwc: np.ndarray, path) -> None:
    """Dump one (h, w, c) frame as magic + dims + little-endian float32."""
    arr = np.ascontiguousarray(frame_hwc, dtype="<f4")
    if arr.ndim != 3:
        raise ValueError(f"sidecar frame must be (h, w, c), got {arr.shape}")
    header = SIDECAR_MAGIC + struct.pack("<III", *arr.shape)
    try:
        with open(path, "wb") as fh:
            fh.write(header)
            fh.write(arr.tobytes())
    except OSError as exc:
        raise FrameIoError(f"{path}: write failed ({exc})")


def read_sidecar(path) -> np.ndarray:
    """Read a frame sidecar back as float32 (h, w, c)."""
    path = Path(path)
    try:
        blob = path.read_bytes()
    except OSError as exc:
        raise FrameIoError(f"{path}: unreadable sidecar ({exc})")
    if len(blob) < 20 or blob[:8] != SIDECAR_MAGIC:
        raise FrameIoError(f"{path}: missing VTF32 sidecar magic")
    h, w, c = struct.unpack("<III", blob[8:20])
    expected = 20 + 4 * h * w * c
    if len(blob) != expected:
        raise FrameIoError(
            f"{path}: sidecar payload is {len(blob)} bytes, expected {expected}"
        )
    return np.frombuffer(blob[20:], dtype="<f4").reshape(h, w, c).copy()
