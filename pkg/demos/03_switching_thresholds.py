# When does a rival's offer pull services away? An offer worth v on s services
# wins when v / s beats the loyal average (a - c)^2 / (4 n).

from resgame import Coalition, CompetitorOffer, CournotGame, deviation_threshold, loyalty_decision

game = CournotGame(n=3, a=10, c=2)
for s in range(1, 4):
    print(f"an offer on {s} service(s) must beat {deviation_threshold(game, s):.4f}")

pair = Coalition.of(0, 1)
for worth in (10.0, 32 / 3, 12.0):
    report = loyalty_decision(game, [CompetitorOffer(pair, worth)])
    print(f"offer {worth:7.4f} on {pair}: {report.recommendation}")

# Several rivals at once: the largest per-service surplus decides.
offers = [CompetitorOffer((0,), 5.5), CompetitorOffer((1, 2), 13.0)]
report = loyalty_decision(game, offers)
for v in report.violations:
    print(f"  {v.coalition}: surplus {v.surplus:.4f}")
print("decision:", report.recommendation)
