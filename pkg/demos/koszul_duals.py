# Walk through a quadratic presentation, its Groebner basis and its dual.

from hhlab import make_params
from hhlab.families import build_presentation, dual_presentation
from hhlab.quadratic import confluence_check, graded_dimensions, monomial_basis

fp = make_params("Gamma_q", 3, q=[2, 1, 1])   # coextended cyclic quiver, m = 3
P = build_presentation(fp)
print(P.to_text())                            # vertices, arrows, relations, arrow order

cert = confluence_check(P)                    # resolve every length-3 overlap
print(cert)                                   # all overlaps resolve: a Groebner basis
print(graded_dimensions(P, 4))                # [4, 9, 6, 0, 0]; sums to 6m + 1 = 19

E = dual_presentation(fp)                     # the dual, read back on the same quiver
print(E.to_text())
print(confluence_check(E))
print([str(p) for p in monomial_basis(E, length=2)])   # normal words of length 2

# the dual is infinite dimensional: a-runs followed by b-runs never die
print(graded_dimensions(E, 8))
