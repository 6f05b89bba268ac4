import json

import numpy as np
import pytest

from circwit.io import dumps, fmt_float, matrix_from_json, matrix_to_json, write_csv


def test_float_format_round_trips():
    for x in (0.1, 1 / 3, -2.5e-17, 1e300, 2.0, 0.0):
        assert float(fmt_float(x)) == x
    assert fmt_float(2.0) == "2.0"
    assert fmt_float(0.1) == "0.10000000000000001"


def test_non_finite_rejected():
    with pytest.raises(ValueError):
        fmt_float(float("nan"))


def test_dumps_is_valid_json_and_stable():
    obj = {"a": [1.0, 2, True, None], "b": {"c": np.float64(0.25)}, "d": []}
    text = dumps(obj)
    assert json.loads(text) == {"a": [1.0, 2, True, None], "b": {"c": 0.25}, "d": []}
    assert text == dumps(obj)
    assert text.endswith("\n")


def test_matrix_round_trip(rng):
    M = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    data = json.loads(dumps(matrix_to_json(M)))
    assert data["dim"] == 4
    assert np.array_equal(matrix_from_json(data), M)


def test_csv_booleans_and_floats():
    text = write_csv([{"x": 1.5, "ok": True}, {"x": 2.0, "ok": False}], ["x", "ok"])
    assert text == "x,ok\n1.5,true\n2.0,false\n"
