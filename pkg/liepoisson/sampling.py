"""
Seeded sampling of points on g*.

Every check draws from its own stream, derived from (seed, check name), so
the points a check sees do not depend on which other checks ran or on the
order worker threads picked them up.
"""
import hashlib
import logging
import random
from typing import Callable

from sympy.polys.domains import QQ

from liepoisson.errors import SamplingError
from models import PointOnDual

logger = logging.getLogger(__name__)


def derive_rng(seed: int, name: str) -> random.Random:
    digest = hashlib.sha256(f"{seed}:{name}".encode("utf-8")).digest()
    return random.Random(int.from_bytes(digest[:8], "big"))


def random_point(dim: int, rng: random.Random, bound: int) -> PointOnDual:
    """Integer coordinates drawn uniformly from [-bound, bound]."""
    if bound < 1:
        raise SamplingError(f"coordinate bound must be positive, got {bound}")
    return PointOnDual.of([rng.randint(-bound, bound) for _ in range(dim)])


def hyperplane_point(normal, rng: random.Random, bound: int) -> PointOnDual:
    """A random point with Σ normal_k ξ_k = 0.

    The coordinate with the last nonzero normal entry is solved for, so its
    value is rational; the others are sampled as in random_point.
    """
    normal = [QQ.convert(c) for c in normal]
    pivots = [k for k, c in enumerate(normal) if c]
    if not pivots:
        raise SamplingError("hyperplane normal is zero")
    pivot = pivots[-1]
    coords = [QQ(rng.randint(-bound, bound)) for _ in normal]
    coords[pivot] = QQ.zero
    coords[pivot] = -sum((c * x for c, x in zip(normal, coords)), QQ.zero) / normal[pivot]
    return PointOnDual(tuple(coords))


def random_parameter(rng: random.Random, bound: int):
    """A nonzero rational p/q with 1 <= |p|, q <= bound."""
    if bound < 1:
        raise SamplingError(f"coordinate bound must be positive, got {bound}")
    return QQ(rng.choice((-1, 1)) * rng.randint(1, bound), rng.randint(1, bound))


def sample_until(
    draw: Callable[[], PointOnDual],
    accept: Callable[[PointOnDual], bool],
    budget: int,
) -> tuple[PointOnDual | None, int]:
    """First drawn point passing accept, with the number of draws used.

    Returns (None, budget) when the budget runs out.
    """
    for attempt in range(1, budget + 1):
        point = draw()
        if accept(point):
            return point, attempt
        logger.debug("Sample %d rejected", attempt)
    return None, budget


def integer_parameters(rng: random.Random, spread: int) -> list[int]:
    """The integers in [-spread, spread] in a seeded random order."""
    values = list(range(-spread, spread + 1))
    rng.shuffle(values)
    return values


def coords_to_strings(point: PointOnDual) -> list[str]:
    return [str(c) for c in point.coords]
