# Services that only partly compete with each other: gamma = 1 is full
# competition for the same demand, gamma = 0 makes every service its own
# monopoly.

import numpy as np

from resgame import (
    CournotGame,
    differentiated_cooperative_worth,
    differentiated_equilibrium,
    iterate_best_response,
)

print("gamma   q each   competing total   cooperative")
for gamma in np.linspace(0, 1, 6):
    game = CournotGame(3, 10, 2, gamma)
    eq = differentiated_equilibrium(game)
    print(f"{gamma:5.2f}   {eq.quantities[0]:6.4f}   {eq.total_profit:15.4f}   "
          f"{differentiated_cooperative_worth(game):11.4f}")

game = CournotGame(2, 10, 2, 0.5)
print("\nlinear solve:   ", differentiated_equilibrium(game).quantities)
print("best responses: ", np.round(iterate_best_response(game).quantities, 10))
