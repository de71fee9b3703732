import json

import pytest

from lineconf import catalog, schema


@pytest.mark.parametrize("name", ["q-minus3", "schlaefli", "p1^2", "fano", "points3"])
def test_round_trip(name):
    c = catalog.by_name(name)
    data = schema.to_schema(c)
    back = schema.loads(json.dumps(data))
    assert schema.to_schema(back) == data
    assert back.lines == c.lines


def test_algebraic_points_keep_coordinates():
    c = catalog.quadric_configuration(2)
    back = schema.loads(schema.dumps(c))
    assert back.labels == c.labels and back.dim == 3


@pytest.mark.parametrize("text", [
    "not json", "{}", '{"dim": null, "points": [1, 1], "lines": []}',
    '{"dim": 3, "points": [[1, 0]], "lines": []}',
    '{"dim": null, "points": [1, 2, 3], "lines": [["a", 1, 2]]}',
])
def test_malformed(text):
    with pytest.raises(schema.SchemaError):
        schema.loads(text)


def test_dot():
    dot = schema.to_dot(catalog.single_line())
    assert dot.splitlines() == ["graph incidence {", "  0;", "  1;", "  2;",
                                "  0 -- 1;", "  0 -- 2;", "  1 -- 2;", "}"]
