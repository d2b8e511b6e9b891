# Fitting ideals, base change, and the squared-ideal identity checked on a constructed presentation.
import random

from iwasawa_theta import (
    LayerElement,
    PadicContext,
    PresentationMatrix,
    base_change,
    diagonal,
    equals,
    fitting_ideal,
    generate_tower,
    stabilize,
    verify_main_identity,
)

ctx = PadicContext(3, 2)
rng = random.Random(0)


def rand(n):
    return LayerElement(ctx, n, [rng.randrange(9) for _ in range(3**n)])


P = PresentationMatrix.from_rows([[rand(1), rand(1), rand(1)], [rand(1), rand(1), rand(1)]])
F = fitting_ideal(P)
print("Fitt(P) has order 3^%d" % F.log_order())
print("pi(Fitt(P)) == Fitt(pi(P)):", equals(F.image(0), fitting_ideal(base_change(P, 0))))

T = generate_tower(11, ctx, 2, a_p=2)
g = stabilize(T)[2]
rep = verify_main_identity(T, 2, diagonal(g, g))
print("(theta_2, nu theta_1)^2 == Fitt(diag(g, g)):", rep.equal, " principal:", rep.principal)
