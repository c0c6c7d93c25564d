import json
import math

import numpy as np
import pytest

from putlab.formats import (CSV_COLUMNS, FormatError, curves_to_csv, curves_to_json,
                            load_mechanism, mechanism_from_dict, mechanism_to_dict,
                            read_curves_csv)
from putlab.mechanisms import CQMechanism, proposed_mechanism, randomized_response
from putlab.put import curve_sweep


def test_csv_header_and_roundtrip():
    points = curve_sweep(5, 1.0, [0.1, 0.5, 1.0])
    text = curves_to_csv(points)
    assert text.splitlines()[0] == ",".join(CSV_COLUMNS)
    rows = read_curves_csv(text)
    assert len(rows) == 3
    for row, p in zip(rows, points):
        for col in CSV_COLUMNS:
            want = p.as_dict()[col]
            if isinstance(want, float):
                assert row[col] == pytest.approx(want, rel=1e-11)
            else:
                assert row[col] == want


def test_csv_empty_cells_for_missing_quantum_a():
    text = curves_to_csv(curve_sweep(6, 1.0, [0.4], numeric_fallback=False))
    row = read_curves_csv(text)[0]
    assert row["a_quantum"] is None and row["ratio_a"] is None
    assert row["quantum_provenance"] == "closed"


def test_json_curves():
    data = json.loads(curves_to_json(curve_sweep(4, 0.5, [0.2, 0.4])))
    assert [list(r) for r in data] == [list(CSV_COLUMNS)] * 2


def test_bad_csv_header():
    with pytest.raises(FormatError):
        read_curves_csv("a,b\n1,2\n")


def test_mechanism_roundtrip(tmp_path):
    mech = proposed_mechanism(4, 1.0)
    path = tmp_path / "m.json"
    path.write_text(json.dumps(mechanism_to_dict(mech, 1.0)))
    back = load_mechanism(path)
    assert isinstance(back, CQMechanism)
    np.testing.assert_allclose(back.outputs, mech.outputs, atol=0)
    assert back.mu == mech.mu

    q = randomized_response(3, math.log(3))
    back = mechanism_from_dict(json.loads(json.dumps(mechanism_to_dict(q, math.log(3)))))
    np.testing.assert_array_equal(back, q)


@pytest.mark.parametrize("doc", [
    {"type": "classical", "v": 2, "matrix": [[0.5, 0.6], [0.5, 0.5]]},
    {"type": "classical", "v": 3, "matrix": [[0.5, 0.5], [0.5, 0.5]]},
    {"type": "cq", "v": 1, "dim": 2, "outputs": [[[1, 0]]]},
    {"type": "quantum", "v": 1},
    {"v": 2},
])
def test_malformed_mechanisms(doc):
    with pytest.raises(FormatError):
        mechanism_from_dict(doc)


def test_malformed_file(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    with pytest.raises(FormatError):
        load_mechanism(path)
    path.write_text("[1, 2]")
    with pytest.raises(FormatError):
        load_mechanism(path)
