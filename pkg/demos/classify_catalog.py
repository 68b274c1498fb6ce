"""
Classifying the built-in games
==============================

Every finite game falls into one of four classes. Here we walk the
built-in catalog and print the verdict together with the evidence
behind it.
"""
from partmon import classify, fixture

catalog = [("spam", "0"), ("spam", "1/3"), ("spam", "3/5"), ("hopeless2x2", None),
           ("exhibit1", None), ("exhibit3", None), ("exhibit4", None), ("flower", 4)]

for name, param in catalog:
    game = fixture(name, param)
    c = classify(game)
    label = name if param is None else f"{name}({param})"
    print(f"{label:14s} K={game.K} E={game.E} -> {c.verdict}")

# The spam filter turns hard once the price of inspecting mail passes 1/2:
# the two cheap actions become neighbors whose loss difference can no
# longer be seen through either of them.
for price in ("1/10", "1/2", "11/20", "9/10"):
    print("spam price", price, classify(fixture("spam", price)).verdict)
