# Point counts, hypotheses, and the local matrices attached to Gross points.
from iwasawa_theta import (
    CurveSpec,
    FieldSpec,
    PadicContext,
    check_hypotheses,
    count_points_ap,
    embedding_identities,
    gross_point_matrix_p,
    local_embedding_matrix,
)

E = CurveSpec(0, -1, 1, 0, 0, N=11, label="11a3")
print("a_ell for ell = 2..13:", {q: count_points_ap(E, q) for q in (2, 3, 5, 7, 13)})

print(check_hypotheses(E, FieldSpec(7), 13))

# y^2 = x^3 + 1 is supersingular at 5.
print("ordinary at 5:", check_hypotheses(CurveSpec(0, 0, 0, 0, 1, 36), FieldSpec(7), 5).ordinary)

K = FieldSpec(7)
print("i(theta) =", local_embedding_matrix(K), embedding_identities(K))
print("Gross point at p = 11, n = 1, M = 2:", gross_point_matrix_p(K, 1, PadicContext(11, 2)))
