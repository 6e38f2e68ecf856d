"""Exact scalars: products of rational prime powers times a root of unity.

Everything the centering procedure does to constants (products, integer
powers, d-th roots) stays inside this group, so no rounding happens until
a number is asked for explicitly.
"""

from toricenter import ExactScalar, unit

minus_one = unit("1/2")
print("-1 as turns:", minus_one.turns)

# the two square roots of -1
for b in range(2):
    r = minus_one.root(2, b)
    print(f"branch {b}: {r}  squared back: {r ** 2}")

# a genuine modulus: 12^(1/3) * e^(2 pi i / 5)
a = ExactScalar({12: "1/3"}, "1/5")
print("normalized:", a, "(12 was factored into 2^2 * 3)")
print("cube:", a ** 3)
print("a * a^-1 == 1:", (a * a.inverse()).is_one())
print("128-bit value:", a.evaluate(128))
print("JSON:", a.to_json())
