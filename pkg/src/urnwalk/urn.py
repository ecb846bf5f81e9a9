"""Two-colour urn schemes and their one-draw transition law.

Three schemes share one interface:

* ``bernoulli`` -- a fixed coin with white probability ``p``; the urn
  composition never changes.  ``p = 1/2`` is the simple symmetric walk.
* ``polya`` -- the drawn ball goes back with another of the same colour.
* ``friedman`` -- the drawn ball goes back with one of the opposite colour.

All probabilities are :class:`fractions.Fraction`; floating point only
enters when a uniform variate is compared against them.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Protocol


class UrnError(ValueError):
    """Invalid urn scheme or starting composition."""


class Color(str, enum.Enum):
    WHITE = "W"
    BLUE = "B"

    @classmethod
    def parse(cls, token: str) -> Color:
        token = token.strip().upper()
        if token in ("W", "WHITE"):
            return cls.WHITE
        if token in ("B", "BLUE"):
            return cls.BLUE
        raise ValueError(f"unknown colour {token!r}; expected W or B")


WHITE = Color.WHITE
BLUE = Color.BLUE


class Kind(str, enum.Enum):
    BERNOULLI = "bernoulli"
    POLYA = "polya"
    FRIEDMAN = "friedman"


class RandomSource(Protocol):
    def random(self) -> float: ...


@dataclass(frozen=True)
class UrnScheme:
    """Replacement rule of an urn.

    ``p`` is only meaningful for the Bernoulli scheme, where it is the fixed
    probability of a white draw.
    """

    kind: Kind
    p: Fraction = Fraction(1, 2)

    def __post_init__(self):
        object.__setattr__(self, "kind", Kind(self.kind))
        p = Fraction(self.p)
        if not 0 <= p <= 1:
            raise UrnError(f"white probability must lie in [0, 1], got {p}")
        object.__setattr__(self, "p", p)

    @classmethod
    def bernoulli(cls, p=Fraction(1, 2)) -> UrnScheme:
        return cls(Kind.BERNOULLI, Fraction(p))

    @classmethod
    def polya(cls) -> UrnScheme:
        return cls(Kind.POLYA)

    @classmethod
    def friedman(cls) -> UrnScheme:
        return cls(Kind.FRIEDMAN)

    @classmethod
    def parse(cls, name: str, p=Fraction(1, 2)) -> UrnScheme:
        try:
            kind = Kind(name.strip().lower())
        except ValueError:
            choices = ", ".join(k.value for k in Kind)
            raise UrnError(f"unknown scheme {name!r}; choose one of {choices}") from None
        return cls(kind, Fraction(p))

    @property
    def name(self) -> str:
        return self.kind.value

    def __str__(self):
        if self.kind is Kind.BERNOULLI:
            return f"bernoulli(p={self.p})"
        return self.kind.value


def validate_start(scheme: UrnScheme, w: int, b: int) -> None:
    """Raise :class:`UrnError` unless ``(w, b)`` is a legal start for ``scheme``."""
    if isinstance(w, bool) or isinstance(b, bool) or int(w) != w or int(b) != b:
        raise UrnError(f"ball counts must be integers, got w={w!r}, b={b!r}")
    if w < 0 or b < 0:
        raise UrnError(f"ball counts must be nonnegative, got w={w}, b={b}")
    if scheme.kind is Kind.POLYA and (w == 0 or b == 0):
        raise UrnError(
            f"Polya urn needs w > 0 and b > 0 (got w={w}, b={b}); "
            "a single-colour Polya urn never draws the other colour"
        )
    if scheme.kind is Kind.FRIEDMAN and w + b == 0:
        raise UrnError("Friedman urn needs at least one ball")


@dataclass(frozen=True)
class UrnState:
    """Initial composition plus the running white/blue draw counts."""

    scheme: UrnScheme
    w: int
    b: int
    white_draws: int = 0
    blue_draws: int = 0

    @property
    def n(self) -> int:
        return self.white_draws + self.blue_draws

    @property
    def whites(self) -> int:
        if self.scheme.kind is Kind.FRIEDMAN:
            return self.w + self.blue_draws
        if self.scheme.kind is Kind.POLYA:
            return self.w + self.white_draws
        return self.w

    @property
    def blues(self) -> int:
        if self.scheme.kind is Kind.FRIEDMAN:
            return self.b + self.white_draws
        if self.scheme.kind is Kind.POLYA:
            return self.b + self.blue_draws
        return self.b

    @property
    def total(self) -> int:
        return self.whites + self.blues

    @property
    def position(self) -> int:
        return self.white_draws - self.blue_draws


def new_urn(scheme: UrnScheme, w: int, b: int) -> UrnState:
    validate_start(scheme, w, b)
    return UrnState(scheme, int(w), int(b))


def white_probability(u: UrnState) -> Fraction:
    """Probability that the next draw from ``u`` is white."""
    if u.scheme.kind is Kind.BERNOULLI:
        return u.scheme.p
    return Fraction(u.whites, u.total)


def blue_probability(u: UrnState) -> Fraction:
    return 1 - white_probability(u)


def draw_probability(u: UrnState, color: Color) -> Fraction:
    return white_probability(u) if color is Color.WHITE else blue_probability(u)


def apply_draw(u: UrnState, color: Color) -> UrnState:
    if color is Color.WHITE:
        return replace(u, white_draws=u.white_draws + 1)
    return replace(u, blue_draws=u.blue_draws + 1)


def sample_draw(u: UrnState, rng: RandomSource) -> tuple[Color, UrnState]:
    """Draw once using one variate from ``rng``.

    The draw is white iff ``U * total < whites`` (``U < p`` for Bernoulli),
    which is the same comparison the simulation kernels use.
    """
    variate = rng.random()
    color = WHITE if is_white(variate, u) else BLUE
    return color, apply_draw(u, color)


def is_white(variate: float, u: UrnState) -> bool:
    if u.scheme.kind is Kind.BERNOULLI:
        return variate < float(u.scheme.p)
    return variate * u.total < u.whites


def sequence_probability(scheme: UrnScheme, w: int, b: int, colors) -> Fraction:
    """Exact probability of observing the draw sequence ``colors`` from a fresh urn."""
    u = new_urn(scheme, w, b)
    prob = Fraction(1)
    for c in colors:
        c = Color(c)
        prob *= draw_probability(u, c)
        if prob == 0:
            return prob
        u = apply_draw(u, c)
    return prob
