# Ideals of Lambda_n are compared through Howell forms of their coefficient lattices.
from iwasawa_theta import ChainRing, IdealHandle, LayerElement, PadicContext, ZModMatrix, howell, is_principal, square

# Howell form over Z/4: the span of (2, 1) also contains (0, 2).
print(howell(ZModMatrix.from_rows(ChainRing(2, 2), [[2, 1]])).rows)

ctx = PadicContext(3, 2)
p = LayerElement.constant(ctx, 1, 3)
X = LayerElement.X(ctx, 1)

m = IdealHandle.of(p, X)  # the maximal ideal
print("(p, X) == (X, p + X):", m == IdealHandle.of(X, p + X))
print("minimal generators of (p, X):", m.min_generators())
print("principal?", is_principal(m))

m2 = square(m)
print("|m^2| = 3^%d, |m| = 3^%d" % (m2.log_order(), m.log_order()))
print("X^2 in m^2:", X * X in m2, " X in m^2:", X in m2)
