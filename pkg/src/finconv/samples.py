"""The shipped sample set used by the axiom suites and the CLI."""

from .builders import cycle_space, discrete_space, indiscrete_space, path_space
from .core import empty_space, point_space


def standard_sample():
    """Intervals, cycles, paths and points, in a fixed order."""
    return [
        ("empty", empty_space()),
        ("point", point_space()),
        ("pair", discrete_space(("a", "b"))),
        ("indiscrete-pair", indiscrete_space(("u", "v"))),
        ("interval-1", path_space(1)),
        ("interval-2", path_space(2)),
        ("path-3", path_space(3)),
        ("cycle-3", cycle_space(3)),
        ("cycle-5", cycle_space(5)),
    ]
