"""d-dimensional walks driven by independent urns, one urn per coordinate.

Every coordinate moves at every step (+1 on white, -1 on blue), so a 2-D
walk makes diagonal moves.  :func:`map_to_simple_2d` rotates such a path by
45 degrees and rescales it onto the axis-stepping simple lattice walk.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .urn import (
    Color,
    RandomSource,
    UrnScheme,
    UrnState,
    apply_draw,
    draw_probability,
    new_urn,
    sample_draw,
)


class TrajectoryError(ValueError):
    pass


def _per_dimension(d, scheme, w, b):
    """Broadcast scalar scheme/w/b to per-dimension lists of length ``d``."""
    if isinstance(d, bool) or int(d) != d or d < 1:
        raise ValueError(f"dimension must be a positive integer, got {d!r}")
    d = int(d)

    def expand(value, label):
        if isinstance(value, (list, tuple)):
            if len(value) != d:
                raise ValueError(f"expected {d} values for {label}, got {len(value)}")
            return list(value)
        return [value] * d

    return expand(scheme, "scheme"), expand(w, "w"), expand(b, "b")


@dataclass(frozen=True)
class WalkState:
    urns: tuple[UrnState, ...]

    @property
    def dims(self) -> int:
        return len(self.urns)

    @property
    def position(self) -> tuple[int, ...]:
        return tuple(u.position for u in self.urns)

    @property
    def time(self) -> int:
        return self.urns[0].n

    def at_origin(self) -> bool:
        return all(u.white_draws == u.blue_draws for u in self.urns)


def new_walk(d: int, scheme, w=1, b=1) -> WalkState:
    """Start a walk at the origin.

    ``scheme``, ``w`` and ``b`` are either scalars shared by all coordinates
    or sequences of length ``d``.
    """
    schemes, ws, bs = _per_dimension(d, scheme, w, b)
    return WalkState(tuple(new_urn(s, wi, bi) for s, wi, bi in zip(schemes, ws, bs)))


def step(walk: WalkState, rng: RandomSource) -> WalkState:
    """Advance every coordinate by one draw from its own urn (one variate each, in order)."""
    return WalkState(tuple(sample_draw(u, rng)[1] for u in walk.urns))


def step_with(walk: WalkState, colors: Sequence[Color]) -> WalkState:
    if len(colors) != walk.dims:
        raise TrajectoryError(f"expected {walk.dims} colours, got {len(colors)}")
    return WalkState(tuple(apply_draw(u, Color(c)) for u, c in zip(walk.urns, colors)))


@dataclass(frozen=True)
class Trajectory:
    """Colours drawn per step and per coordinate; positions are always re-derived."""

    schemes: tuple[UrnScheme, ...]
    starts: tuple[tuple[int, int], ...]
    steps: tuple[tuple[Color, ...], ...]

    def __post_init__(self):
        if len(self.schemes) != len(self.starts) or not self.schemes:
            raise TrajectoryError("need one (scheme, start) pair per dimension")
        d = len(self.schemes)
        steps = []
        for i, row in enumerate(self.steps):
            if len(row) != d:
                raise TrajectoryError(f"step {i} has {len(row)} colours, expected {d}")
            steps.append(tuple(Color(c) for c in row))
        object.__setattr__(self, "steps", tuple(steps))

    @classmethod
    def from_columns(cls, schemes, starts, columns: Sequence[Iterable]) -> Trajectory:
        """Build from one colour sequence per dimension (all the same length)."""
        columns = [[Color.parse(c) if isinstance(c, str) else Color(c) for c in col]
                   for col in columns]
        lengths = {len(col) for col in columns}
        if len(lengths) > 1:
            raise TrajectoryError(f"colour sequences differ in length: {sorted(lengths)}")
        return cls(tuple(schemes), tuple(tuple(s) for s in starts), tuple(zip(*columns)))

    @property
    def dims(self) -> int:
        return len(self.schemes)

    def __len__(self):
        return len(self.steps)

    def initial(self) -> WalkState:
        return new_walk(self.dims, list(self.schemes),
                        [s[0] for s in self.starts], [s[1] for s in self.starts])

    def states(self):
        """Yield the walk state after each prefix, starting with the empty one."""
        state = self.initial()
        yield state
        for colors in self.steps:
            state = step_with(state, colors)
            yield state

    def positions(self) -> list[tuple[int, ...]]:
        return [s.position for s in self.states()]

    def to_lines(self) -> list[str]:
        return [",".join(c.value for c in row) for row in self.steps]

    @classmethod
    def from_lines(cls, lines: Iterable[str], schemes, starts) -> Trajectory:
        rows = []
        for lineno, line in enumerate(lines, 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            try:
                rows.append(tuple(Color.parse(tok) for tok in line.split(",")))
            except ValueError as exc:
                raise TrajectoryError(f"line {lineno}: {exc}") from None
        return cls(tuple(schemes), tuple(tuple(s) for s in starts), tuple(rows))


def trajectory_probability(t: Trajectory) -> Fraction:
    prob = Fraction(1)
    state = t.initial()
    for colors in t.steps:
        for u, c in zip(state.urns, colors):
            prob *= draw_probability(u, c)
        if prob == 0:
            return prob
        state = step_with(state, colors)
    return prob


def map_to_simple_2d(path: Sequence[Sequence[int]]) -> list[tuple[int, int]]:
    """Rotate a diagonal-step 2-D path onto the axis-stepping lattice.

    ``(x, y) -> ((x + y) / 2, (y - x) / 2)``.  Consecutive input points must
    differ by ``(+-1, +-1)``; the first point must have ``x + y`` even so the
    image stays on the integer lattice.
    """
    out = []
    prev = None
    for i, point in enumerate(path):
        if len(point) != 2:
            raise TrajectoryError(f"point {i} is not two-dimensional: {point!r}")
        x, y = int(point[0]), int(point[1])
        if (x + y) % 2:
            raise TrajectoryError(f"point {i} {(x, y)} has odd coordinate sum")
        if prev is not None and (abs(x - prev[0]), abs(y - prev[1])) != (1, 1):
            raise TrajectoryError(f"step {i} from {prev} to {(x, y)} is not a diagonal unit move")
        out.append(((x + y) // 2, (y - x) // 2))
        prev = (x, y)
    return out


def map_from_simple_2d(path: Sequence[Sequence[int]]) -> list[tuple[int, int]]:
    """Inverse of :func:`map_to_simple_2d`."""
    return [(int(u) - int(v), int(u) + int(v)) for u, v in path]
