# The provider's side: against a rival offering 8 for two services, how much
# must the user's cost fall, or the environment grow, or how few services must
# remain, before loyalty is restored?

import numpy as np

from resgame import (
    CompetitorOffer,
    CournotGame,
    estimation_gap,
    load_fixture,
    loyalty_decision,
    remediation_plan,
)

game = CournotGame(n=3, a=10, c=5)
offers = [CompetitorOffer((0, 1), 8.0)]
plan = remediation_plan(game, offers)
print("best offer per service:", plan.target_per_member)
print("current average:      ", round(plan.current_ratio, 4))
print("cut cost by:          ", round(plan.delta_c, 4))
print("grow environment by:  ", round(plan.delta_a, 4))
print("keep at most services:", plan.service_cap)
print("after the cost cut:", loyalty_decision(game.replace(c=game.c - plan.delta_c), offers).recommendation)

# How the needed cost cut grows as the rival's offer improves.
print("\n offer   cost cut")
for worth in np.linspace(6, 20, 8):
    dc = remediation_plan(game, [CompetitorOffer((0, 1), worth)]).delta_c
    print(f"{worth:6.2f}   {'infeasible' if dc is None else f'{dc:.4f}'}")

# The provider guessed the full bundle at 3 where the user feels 2.5.
user = load_fixture("zoogle_plus").worth_table
provider = load_fixture("zoogle_plus_loyal").worth_table
gap = estimation_gap(provider, user)
print(f"\nlargest misjudgement {gap.max_abs_gap} on {gap.worst_coalition}")
