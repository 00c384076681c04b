import logging

import pytest

from charsum import _internal as internal


def test_log_uses_package_logger(caplog):
    with caplog.at_level(logging.INFO, logger="charsum"):
        internal._log("info", "stage sums: started\n")

    assert caplog.records[-1].name == "charsum"
    assert caplog.records[-1].getMessage() == "stage sums: started"


def test_set_log_level(caplog):
    internal._set_log_level(logging.ERROR)
    logger = internal._get_logger()
    assert not logger.isEnabledFor(logging.WARNING)

    internal._log("warning", "hidden")
    internal._log("error", "shown")
    messages = [r.getMessage() for r in caplog.records]
    assert "hidden" not in messages
    assert "shown" in messages


def _rows(field, values):
    return [[field.from_int(x) for x in row] for row in values]


def test_rank(f3):
    vectors = _rows(f3, [[1, 2, 0], [2, 1, 0], [0, 0, 1]])
    assert internal._rank(vectors) == 2
    assert internal._rank(_rows(f3, [[0, 0, 0]])) == 0


def test_echelon_pivots_do_not_depend_on_order(f3):
    vectors = _rows(f3, [[0, 1, 1], [1, 1, 0], [1, 2, 1]])
    forward = internal._echelon(vectors)
    backward = internal._echelon(vectors[::-1])
    assert sorted(forward) == sorted(backward)

    for pos, vector in forward.items():
        assert vector[pos].is_one
        assert all(vector[j].is_zero for j in range(pos))


@pytest.mark.parametrize(
    ("values", "expected"),
    [
        ([[0, 1], [1, 0]], 2),
        ([[1, 2], [2, 4]], 0),
        ([[2, 0, 0], [0, 2, 0], [0, 0, 2]], 8),
        ([[0, 0, 1], [0, 1, 0], [1, 0, 0]], -1),
    ],
)
def test_det(f3, values, expected):
    det = internal._det(_rows(f3, values))
    assert det == f3.from_int(expected)


def test_det_f4(f4):
    w = f4.generator
    assert internal._det([[f4.zero, w], [w, f4.zero]]) == w * w


def test_det_rejects_bad_shapes(f3):
    with pytest.raises(ValueError):
        internal._det([])

    with pytest.raises(ValueError):
        internal._det(_rows(f3, [[1, 2], [1]]))
