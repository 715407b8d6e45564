"""Field container and CSV / PGM export formats."""

import numpy as np
import pytest

from boxrevive import Field2D, read_field_csv, write_field_csv, write_field_pgm
from boxrevive.fields import field_csv_text, trapezoid_2d


@pytest.fixture
def small_field():
    t = np.linspace(0.0, 0.5, 4)
    x = np.linspace(0.0, 1.0, 6)
    values = np.outer(1.0 + t, np.sin(np.pi * x) ** 2)
    return Field2D(t, x, values, {"axis1": "time [T_rev]", "axis2": "position [L]"})


def parse_pgm(path):
    raw = path.read_bytes()
    assert raw.startswith(b"P5\n")
    rest = raw[3:]
    comment_end = rest.index(b"\n")
    comment = rest[:comment_end].decode()
    assert comment.startswith("# ")
    dims, rest = rest[comment_end + 1 :].split(b"\n", 1)
    maxval, pixels = rest.split(b"\n", 1)
    w, h = (int(v) for v in dims.split())
    assert int(maxval) == 255
    data = np.frombuffer(pixels, dtype=np.uint8).reshape(h, w)
    return comment, data


class TestField2D:
    def test_shape_mismatch_rejected(self):
        with pytest.raises(ValueError):
            Field2D(np.arange(3.0), np.arange(4.0), np.zeros((4, 3)))

    def test_trapezoid_2d_on_constant(self):
        f = Field2D(np.linspace(0, 2, 9), np.linspace(0, 3, 7), np.ones((9, 7)))
        assert trapezoid_2d(f.axis1, f.axis2, f.values) == pytest.approx(6.0, rel=1e-12)


class TestCsv:
    def test_round_trip(self, small_field, tmp_path):
        path = tmp_path / "field.csv"
        write_field_csv(path, small_field)
        back = read_field_csv(path)
        assert np.allclose(back.axis1, small_field.axis1, atol=1e-11)
        assert np.allclose(back.axis2, small_field.axis2, atol=1e-11)
        assert np.allclose(back.values, small_field.values, rtol=1e-11)

    def test_two_header_lines(self, small_field):
        lines = field_csv_text(small_field).splitlines()
        assert lines[0].startswith("#") and lines[1].startswith("#")
        assert not lines[2].startswith("#")
        assert "time [T_rev]" in lines[0]

    def test_byte_stability(self, small_field):
        assert field_csv_text(small_field) == field_csv_text(small_field)


class TestPgm:
    def test_density_export_dimensions(self, small_field, tmp_path):
        path = tmp_path / "field.pgm"
        write_field_pgm(path, small_field, signed=False, gamma=0.5)
        comment, data = parse_pgm(path)
        assert data.shape == (len(small_field.axis1), len(small_field.axis2))
        assert "gamma=0.5" in comment and "max=" in comment
        assert data.max() == 255                      # global maximum maps to white
        assert data[:, 0].max() == 0                  # wall column is black

    def test_gamma_compression(self, tmp_path):
        t = np.arange(2.0)
        x = np.arange(3.0)
        values = np.array([[0.0, 1.0, 4.0]] * 2)      # quarter of max -> half gray
        path = tmp_path / "gamma.pgm"
        write_field_pgm(path, Field2D(t, x, values), signed=False, gamma=0.5)
        _, data = parse_pgm(path)
        assert list(data[0]) == [0, 128, 255]

    def test_signed_export_midgray_zero(self, tmp_path):
        t = np.linspace(0, 1, 3)
        x = np.linspace(0, 1, 5)
        values = np.array([[-1.0, -0.5, 0.0, 0.5, 1.0]] * 3)
        path = tmp_path / "signed.pgm"
        write_field_pgm(path, Field2D(t, x, values), signed=True)
        comment, data = parse_pgm(path)
        assert "mapping=symmetric" in comment and "absmax=" in comment
        assert data[0, 0] == 0 and data[0, -1] == 255
        assert data[0, 2] in (127, 128)

    def test_negative_values_rejected_for_unsigned(self, tmp_path):
        f = Field2D(np.arange(2.0), np.arange(2.0), np.array([[0.0, -1.0], [0.0, 1.0]]))
        with pytest.raises(ValueError):
            write_field_pgm(tmp_path / "bad.pgm", f, signed=False)
