# Each service is a Cournot play producing q units of value at unit cost c, in
# an environment of size a. Competing plays settle at q = (a - c) / (n + 1);
# cooperating they earn (a - c)^2 / 4 between them.

import numpy as np

from resgame import CournotGame, cooperative_worth, iterate_best_response, noncooperative_equilibrium

game = CournotGame(n=3, a=10, c=2)
closed = noncooperative_equilibrium(game)
print("closed form quantities:", closed.quantities)
print("closed form profits:   ", closed.profits)

# The same point reached with no formula, by damped best-response play.
dyn = iterate_best_response(game, initial=[5.0, 0.0, 1.0], damping=0.5)
print(f"best-response dynamics: {np.round(dyn.quantities, 10)} after {dyn.iterations} sweeps")

# Competing always leaves value on the table once there are two or more plays.
print("\n n   competing total   cooperative")
for n in range(1, 9):
    g = CournotGame(n, 10, 2)
    print(f"{n:2d}   {noncooperative_equilibrium(g).total_profit:15.4f}   {cooperative_worth(g):11.4f}")
