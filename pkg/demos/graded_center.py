# Graded centers of duals, compared with the predicted generators.

from hhlab import Field, make_params
from hhlab.center import center_piece, match_structure
from hhlab.families import dual_presentation, epsilon_d, predicted_generators

# all q equal to 1: the parameter product has order d = 1
fp = make_params("Gamma_q", 2, q=[1, 1])
E = dual_presentation(fp)
for L in range(7):
    print(L, center_piece(E, L).dimension)    # 1 0 2 0 4 0 6: x^a y^b w^c counts

gens = predicted_generators(fp, E=E)
print(gens["x"].to_str(E.rank))               # x: the a-loops through every vertex
print(epsilon_d(fp))                          # (eps, p) with w^p = eps x y

report = match_structure(E, fp, 12)
print(report.table())

# q = (-1, 1, 1) puts the product at order 2, and a sign enters eps
fp = make_params("Gamma_q", 3, q=[-1, 1, 1])
print(epsilon_d(fp), epsilon_d(fp, sign_fix=False))
print(match_structure(dual_presentation(fp), fp, 12).consistent)

# a transcendental parameter kills everything above length 0
K = Field.rational_functions()
fp = make_params("Gamma_mn", 2, 2, [["t", 1], [1, 1]], K)
E = dual_presentation(fp)
print([center_piece(E, L).dimension for L in range(9)])
