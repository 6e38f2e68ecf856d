"""Monomial changes of coordinates and what they do to a subtorus.

A unimodular matrix K defines the automorphism t_i = prod z_j^K[i][j] of
the torus; its inverse uses H = K^-1. An equation z^p = alpha becomes
t^(p H) = alpha.
"""

from toricenter import IntMatrix, MonomialMap, TorusEquation, unit

K = IntMatrix.from_rows([[1, 2], [1, 1]])
phi = MonomialMap.from_matrix(K)
print("forward:", phi.forward.tolist(), " backward:", phi.backward.tolist())

eq = TorusEquation((1, 2), unit("1/2"))
image = phi.pushforward(eq)
print(f"{eq}   becomes   {image}")
print("and back:", phi.inverse().pushforward(image))

z = (2 + 1j, 0.5 - 0.25j)
t = phi.apply(z, 128)
print("point", z, "maps to", t)
print("round trip:", phi.inverse().apply(t, 128))
