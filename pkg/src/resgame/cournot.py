"""Cournot equilibria and cooperative worths of the resource game.

Each play ``i`` produces ``q_i`` units of value and earns
``(a - q_i - gamma * sum_{j != i} q_j - c) * q_i``; the homogeneous model is
``gamma = 1``. Closed forms are provided for the symmetric game together with
a damped best-response iteration that reaches the same fixed point without
using them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Sequence

import numpy as np

from .errors import InvalidParameter, NoConvergence
from .game_model import CharacteristicFunction, CournotGame, Mode

DEFAULT_DAMPING = 0.5
DEFAULT_TOL = 1e-10
DEFAULT_MAX_ITER = 10_000


class Method(str, Enum):
    CLOSED_FORM = "closed_form"
    BEST_RESPONSE_ITERATION = "best_response_iteration"
    LINEAR_SOLVE = "linear_solve"


@dataclass(frozen=True)
class EquilibriumProfile:
    quantities: tuple[float, ...]
    profits: tuple[float, ...]
    total_profit: float
    method: Method
    iterations: int = 0
    residual: float = 0.0

    @property
    def n(self) -> int:
        return len(self.quantities)


def _gamma(game: CournotGame) -> float:
    return 1.0 if game.gamma is None else game.gamma


def _require_homogeneous(game: CournotGame, what: str) -> None:
    if game.gamma is not None:
        raise InvalidParameter(
            f"{what} covers the homogeneous game only; use the differentiated variant for gamma={game.gamma}"
        )


def play_profits(game: CournotGame, quantities: Sequence[float]) -> tuple[float, ...]:
    """Per-play profit ``(a - q_i - gamma * others_i - c) * q_i``."""
    g = _gamma(game)
    total = math.fsum(quantities)
    return tuple(
        (game.a - q - g * (total - q) - game.c) * q for q in quantities
    )


def _profile(game, quantities, method, iterations=0, residual=0.0) -> EquilibriumProfile:
    quantities = tuple(float(q) for q in quantities)
    profits = play_profits(game, quantities)
    return EquilibriumProfile(
        quantities, profits, math.fsum(profits), method, iterations, residual
    )


def foc_residuals(game: CournotGame, quantities: Sequence[float]) -> np.ndarray:
    """Marginal profit ``a - c - 2 q_i - gamma * others_i`` of every play."""
    q = np.asarray(quantities, dtype=float)
    g = _gamma(game)
    return game.margin - 2.0 * q - g * (q.sum() - q)


def noncooperative_equilibrium(game: CournotGame) -> EquilibriumProfile:
    """Symmetric Nash equilibrium ``q_i = (a - c) / (n + 1)``."""
    _require_homogeneous(game, "noncooperative_equilibrium")
    q = game.margin / (game.n + 1)
    return _profile(game, [q] * game.n, Method.CLOSED_FORM)


def cooperative_worth(game: CournotGame) -> float:
    """Grand-coalition worth ``(a - c)**2 / 4``; independent of ``n``."""
    _require_homogeneous(game, "cooperative_worth")
    return game.margin**2 / 4.0


def best_response(game: CournotGame, others_total: float) -> float:
    """Profit-maximizing quantity against the others' total output.

    In the differentiated game ``others_total`` is the raw sum of the other
    plays' quantities; it is weighted by ``gamma`` here.
    """
    if others_total < 0:
        raise InvalidParameter(f"others_total must be >= 0, got {others_total}")
    return max(0.0, (game.margin - _gamma(game) * others_total) / 2.0)


def iterate_best_response(
    game: CournotGame,
    initial: Optional[Sequence[float]] = None,
    damping: float = DEFAULT_DAMPING,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
) -> EquilibriumProfile:
    """Damped best-response dynamics, one play at a time.

    Each sweep moves every play a fraction ``damping`` of the way towards its
    best response given the current quantities of the others (later plays in
    the sweep see earlier plays' updates). Stops once every play is within
    ``tol`` of its best response in the max norm.

    Raises:
        NoConvergence: ``max_iter`` sweeps without meeting ``tol``.
    """
    if not 0.0 < damping <= 1.0:
        raise InvalidParameter(f"damping must lie in (0, 1], got {damping}")
    if not tol > 0:
        raise InvalidParameter(f"tol must be positive, got {tol}")
    n = game.n
    q = [0.0] * n if initial is None else [float(x) for x in initial]
    if len(q) != n:
        raise InvalidParameter(f"initial has {len(q)} entries, game has {n} plays")
    if any(x < 0 or not math.isfinite(x) for x in q):
        raise InvalidParameter("initial quantities must be finite and >= 0")

    margin, g = game.margin, _gamma(game)

    def residual(q):
        total = math.fsum(q)
        return max(abs(max(0.0, (margin - g * (total - x)) / 2.0) - x) for x in q)

    res = residual(q)
    for sweep in range(1, max_iter + 1):
        if res <= tol:
            return _profile(game, q, Method.BEST_RESPONSE_ITERATION, sweep - 1, res)
        total = math.fsum(q)
        for i in range(n):
            target = max(0.0, (margin - g * (total - q[i])) / 2.0)
            step = damping * (target - q[i])
            q[i] += step
            total += step
        res = residual(q)
    if res <= tol:
        return _profile(game, q, Method.BEST_RESPONSE_ITERATION, max_iter, res)
    raise NoConvergence(
        f"best-response iteration did not reach tol={tol} in {max_iter} sweeps (residual {res:.3g})",
        last_iterate=tuple(q),
        residual=res,
    )


def _require_gamma(game: CournotGame, what: str) -> float:
    if game.gamma is None:
        raise InvalidParameter(f"{what} needs a differentiation parameter gamma")
    return game.gamma


def differentiated_equilibrium(game: CournotGame) -> EquilibriumProfile:
    """Nash equilibrium under differentiated demand, by dense linear solve.

    Solves ``2 q_i + gamma * sum_{j != i} q_j = a - c`` for all plays at once.
    """
    g = _require_gamma(game, "differentiated_equilibrium")
    n = game.n
    system = np.full((n, n), g) + (2.0 - g) * np.eye(n)
    q = np.linalg.solve(system, np.full(n, game.margin))
    return _profile(game, q, Method.LINEAR_SOLVE)


def differentiated_cooperative_worth(game: CournotGame) -> float:
    """Joint maximum of all plays' profits, ``n (a-c)**2 / (4 (1 + gamma (n-1)))``.

    The joint objective is concave for gamma in [0, 1], so the symmetric
    stationary point is the global maximum.
    """
    g = _require_gamma(game, "differentiated_cooperative_worth")
    return game.n * game.margin**2 / (4.0 * (1.0 + g * (game.n - 1)))


def grand_coalition_worth(game: CournotGame) -> float:
    if game.gamma is None:
        return cooperative_worth(game)
    return differentiated_cooperative_worth(game)


def equilibrium(game: CournotGame) -> EquilibriumProfile:
    if game.gamma is None:
        return noncooperative_equilibrium(game)
    return differentiated_equilibrium(game)


def coalition_worth(game: CournotGame, s: int) -> float:
    """Worth of a coalition of ``s`` plays acting jointly against the rest.

    The ``s`` members maximize their combined profit while each of the
    ``n - s`` outsiders best-responds on its own; by symmetry members share
    one quantity ``x`` and outsiders another ``y``. For the homogeneous game
    this gives ``((a - c) / (n - s + 2))**2``, which is the non-cooperative
    per-play profit at ``s = 1`` and ``(a - c)**2 / 4`` at ``s = n``.
    """
    if not 1 <= s <= game.n:
        raise InvalidParameter(f"coalition size must lie in 1..{game.n}, got {s}")
    g, m, k = _gamma(game), game.margin, game.n - s
    # member FOC:   (2 + 2g(s-1)) x + g k y = m
    # outsider FOC: g s x + (2 + g(k-1)) y  = m
    a11, a12 = 2.0 + 2.0 * g * (s - 1), g * k
    a21, a22 = g * s, 2.0 + g * (k - 1)
    det = a11 * a22 - a12 * a21
    x = m * (a22 - a12) / det
    y = m * (a11 - a21) / det
    price = m - x - g * ((s - 1) * x + k * y)
    return s * x * price


def induced_characteristic_function(game: CournotGame) -> CharacteristicFunction:
    """Characteristic function induced by the game via :func:`coalition_worth`."""
    by_size = tuple(coalition_worth(game, s) for s in range(1, game.n + 1))
    # pin the grand coalition to the exact closed form
    by_size = by_size[:-1] + (grand_coalition_worth(game),)
    return CharacteristicFunction(Mode.INDUCED_COURNOT, game.n, by_size=by_size, game=game)
