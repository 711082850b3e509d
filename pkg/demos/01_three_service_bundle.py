# A user tries a bundle of three services: email, cloud and voip.
# One service alone is worth nothing, any two together are worth 2, and all
# three are worth 2.5. Should the user keep all three?

from resgame import core_nonempty, find_violations, load_fixture, loyalty_decision

bundle = load_fixture("zoogle_plus").worth_table
print("worth of the full bundle:", bundle.grand_worth)
print("average per service when loyal:", round(bundle.grand_worth / 3, 4))

# A pair gives 2 over two services, i.e. 1 each, which beats 0.8333.
print("core non-empty:", core_nonempty(bundle))
for v in find_violations(bundle):
    print(f"  {v.coalition}: {v.per_member_worth:.4f} per service, surplus {v.surplus:.4f}")
print("decision:", loyalty_decision(bundle).recommendation)

# Raise the full bundle to 3 and nothing beats 1 per service any more.
loyal = load_fixture("zoogle_plus_loyal").worth_table
print("\nwith v(N) = 3, core non-empty:", core_nonempty(loyal))
print("decision:", loyalty_decision(loyal).recommendation)
