import numpy as np
import pytest
from PIL import Image

from stvsr.errors import FrameIoError
from stvsr.frames import (
    SIDECAR_MAGIC,
    frame_name,
    quantize,
    read_frames,
    read_sidecar,
    write_frames,
    write_sidecar,
)


def test_frame_name_padding():
    assert frame_name(0) == "frame_000000.png"
    assert frame_name(123) == "frame_000123.png"


def test_quantize_rounds_half_away_from_zero():
    x = np.array([[0.0, 0.5, 1.0, 1.5, -0.2, 127.5 / 255.0]])
    got = quantize(x)
    assert got.dtype == np.uint8
    assert got.tolist() == [[0, 128, 255, 255, 0, 128]]


def test_read_black_frame(tmp_path):
    Image.new("L", (2, 2), 0).save(tmp_path / "frame_000000.png")
    video = read_frames(tmp_path)
    assert video.shape == (1, 2, 2, 1)
    assert np.all(video == 0.0)


def test_round_trip_matches_quantization(tmp_path, rng):
    video = rng.random((3, 5, 7, 3))
    write_frames(video, tmp_path / "out")
    back = read_frames(tmp_path / "out")
    want = quantize(video).astype(np.float64) / 255.0
    assert np.array_equal(back, want)


def test_round_trip_grayscale(tmp_path, rng):
    video = rng.random((2, 4, 4, 1))
    write_frames(video, tmp_path / "gray")
    back = read_frames(tmp_path / "gray")
    assert back.shape == (2, 4, 4, 1)
    assert np.array_equal(back, quantize(video).astype(np.float64) / 255.0)


def test_written_bytes_are_deterministic(tmp_path, rng):
    video = rng.random((2, 4, 4, 3))
    write_frames(video, tmp_path / "a")
    write_frames(video, tmp_path / "b")
    for i in range(2):
        a = (tmp_path / "a" / frame_name(i)).read_bytes()
        b = (tmp_path / "b" / frame_name(i)).read_bytes()
        assert a == b


def test_read_missing_directory(tmp_path):
    with pytest.raises(FrameIoError):
        read_frames(tmp_path / "nope")


def test_read_empty_directory(tmp_path):
    (tmp_path / "empty").mkdir()
    with pytest.raises(FrameIoError):
        read_frames(tmp_path / "empty")


def test_read_gap_names_first_missing_frame(tmp_path):
    d = tmp_path / "gap"
    d.mkdir()
    for i in (0, 2):
        Image.new("L", (2, 2), i).save(d / frame_name(i))
    with pytest.raises(FrameIoError, match="frame_000001.png"):
        read_frames(d)


def test_read_mixed_dimensions_names_file(tmp_path):
    d = tmp_path / "mixed"
    d.mkdir()
    Image.new("L", (2, 2), 0).save(d / frame_name(0))
    Image.new("L", (3, 2), 0).save(d / frame_name(1))
    with pytest.raises(FrameIoError, match="frame_000001.png"):
        read_frames(d)


def test_read_mixed_channel_count(tmp_path):
    d = tmp_path / "chan"
    d.mkdir()
    Image.new("L", (2, 2), 0).save(d / frame_name(0))
    Image.new("RGB", (2, 2), (1, 2, 3)).save(d / frame_name(1))
    with pytest.raises(FrameIoError, match="frame_000001.png"):
        read_frames(d)


def test_read_corrupt_file(tmp_path):
    d = tmp_path / "junk"
    d.mkdir()
    (d / frame_name(0)).write_bytes(b"not a png at all")
    with pytest.raises(FrameIoError, match="frame_000000.png"):
        read_frames(d)


def test_read_unsupported_mode(tmp_path):
    d = tmp_path / "pal"
    d.mkdir()
    Image.new("P", (2, 2), 0).save(d / frame_name(0))
    with pytest.raises(FrameIoError, match="frame_000000.png"):
        read_frames(d)


def test_write_rejects_out_of_range_channels(tmp_path):
    with pytest.raises(ValueError):
        write_frames(np.zeros((1, 2, 2, 2)), tmp_path / "bad")


def test_sidecar_round_trip_is_bit_exact(tmp_path, rng):
    frame = rng.standard_normal((4, 5, 3)).astype(np.float64)
    path = tmp_path / "f.f32"
    write_sidecar(frame, path)
    back = read_sidecar(path)
    assert back.shape == frame.shape
    assert np.array_equal(back, frame.astype(np.float32).astype(np.float64))


def test_sidecar_written_alongside_frames(tmp_path, rng):
    video = rng.random((2, 4, 4, 1))
    write_frames(video, tmp_path / "sc", sidecar=True)
    for i in range(2):
        raw = read_sidecar(tmp_path / "sc" / f"frame_{i:06d}.f32")
        assert np.allclose(raw, video[i], rtol=0, atol=1e-7)


def test_sidecar_rejects_bad_magic(tmp_path):
    path = tmp_path / "bad.f32"
    path.write_bytes(b"XXXXXXXX" + b"\x00" * 32)
    with pytest.raises(FrameIoError):
        read_sidecar(path)


def test_sidecar_rejects_truncated_payload(tmp_path, rng):
    frame = rng.random((3, 3, 1))
    path = tmp_path / "t.f32"
    write_sidecar(frame, path)
    data = path.read_bytes()
    path.write_bytes(data[:-4])
    with pytest.raises(FrameIoError):
        read_sidecar(path)


def test_sidecar_magic_prefix(tmp_path, rng):
    path = tmp_path / "m.f32"
    write_sidecar(rng.random((2, 2, 1)), path)
    assert path.read_bytes().startswith(SIDECAR_MAGIC)
