# Working in Z/p^M and in the finite layers Lambda_n = (Z/p^M)[X]/((1+X)^{p^n} - 1).
from iwasawa_theta import LayerElement, PadicContext, inv_unit, iota, norm_map, omega, project, unit_root

ctx = PadicContext(5, 3)

# The unit root of X^2 - a_p X + p, Hensel-lifted from a_p mod p.
ap = ctx(3)
alpha = unit_root(ap)
print("alpha =", alpha, " check:", alpha * alpha - ap * alpha + 5)
print("1/alpha =", inv_unit(alpha))

# Layer 1 has p = 5 coefficients.  gamma = 1 + X generates the Galois group.
gamma = LayerElement.gamma(ctx, 1)
print("gamma^5 == 1:", gamma**5 == LayerElement.one(ctx, 1))

# iota inverts group elements.
print("iota(gamma) =", iota(gamma))

# The norm map sends 1 to the sum over the kernel of pi; projecting back multiplies by p.
nu1 = norm_map(LayerElement.one(ctx, 0))
print("nu(1) =", nu1)
print("pi(nu(1)) =", project(nu1))

# omega_0 = X vanishes after projecting to layer 0.
print("omega_0 in layer 1:", omega(ctx, 0, 1), "->", project(omega(ctx, 0, 1)))
