"""Named configurations: projective spaces, products of P^1, elliptic quadrics, Schlaefli."""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations

from .config import LineConfiguration, disjoint_union, isolated_points, point_orbit, product_configuration
from .gf2geom import PointSet, enumerate_projective_points, minus_quadric, variety_points


@lru_cache(maxsize=None)
def projective_configuration(n: int) -> LineConfiguration:
    if n < 1:
        raise ValueError("P^n needs n >= 1 to carry a line")
    pts = enumerate_projective_points(n)
    return LineConfiguration.from_point_set(PointSet(n, tuple(pts)))


def fano() -> LineConfiguration:
    return projective_configuration(2)


def single_line() -> LineConfiguration:
    return projective_configuration(1)


@lru_cache(maxsize=None)
def quadric_configuration(n: int) -> LineConfiguration:
    """Points and lines of the elliptic quadric Q_{2n}^- in P^{2n-1}(F2)."""
    return LineConfiguration.from_point_set(variety_points(minus_quadric(n)))


def p1_power(n: int) -> LineConfiguration:
    return product_configuration([single_line()] * n)


def schlaefli_labels() -> list[str]:
    a = [f"a{i}" for i in range(1, 7)]
    b = [f"b{i}" for i in range(1, 7)]
    c = [f"c{i}{j}" for i, j in combinations(range(1, 7), 2)]
    return a + b + c


def _c(i: int, j: int) -> str:
    return f"c{min(i, j)}{max(i, j)}"


@lru_cache(maxsize=None)
def schlaefli_configuration() -> LineConfiguration:
    """The 27 lines of a cubic surface, lines being the 45 tritangent triples."""
    labels = schlaefli_labels()
    triples = []
    for i in range(1, 7):
        for j in range(1, 7):
            if i != j:
                triples.append((f"a{i}", f"b{j}", _c(i, j)))
    six = set(range(1, 7))
    for pairing in _perfect_matchings(sorted(six)):
        triples.append(tuple(_c(*pair) for pair in pairing))
    return LineConfiguration.from_lines(labels, triples)


def _perfect_matchings(items: list[int]):
    if not items:
        yield []
        return
    first = items[0]
    for k in range(1, len(items)):
        rest = items[1:k] + items[k + 1:]
        for m in _perfect_matchings(rest):
            yield [(first, items[k])] + m


def homogeneity_check(c: LineConfiguration) -> bool:
    """Whether Aut(c) is transitive on points."""
    if c.n == 0:
        return True
    return len(point_orbit(c, 0)) == c.n


def by_name(name: str) -> LineConfiguration:
    """Resolve catalog names such as ``fano``, ``p3``, ``q-minus3``, ``p1^2``, ``points5``."""
    key = name.strip().lower().replace("_", "-")
    if key in ("fano", "p2"):
        return fano()
    if key in ("line", "p1"):
        return single_line()
    if key == "schlaefli" or key == "schlafli":
        return schlaefli_configuration()
    if key.startswith("q-minus"):
        return quadric_configuration(_index(key[len("q-minus"):], name))
    if key.startswith("p1^"):
        return p1_power(_index(key[3:], name))
    if key.startswith("points"):
        return isolated_points(_index(key[len("points"):], name))
    if key.startswith("p") and key[1:].isdigit():
        return projective_configuration(int(key[1:]))
    if key == "line+point":
        return disjoint_union(single_line(), isolated_points(1))
    raise KeyError(f"unknown catalog object {name!r}")


def _index(text: str, name: str) -> int:
    text = text.strip("- ")
    if not text.isdigit():
        raise KeyError(f"unknown catalog object {name!r}")
    return int(text)


CATALOG_NAMES = ("fano", "line", "schlaefli", "p<n>", "q-minus<n>", "p1^<n>", "points<n>", "line+point")
