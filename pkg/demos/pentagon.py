"""The pentagon relation and the low-order BCH terms, checked by hand.

    python demos/pentagon.py
"""

from fractions import Fraction

from rank2scatter.group import dilog_element, equals_mod, eval_product, log
from rank2scatter.lie import bracket, dilog_series

D = 6
e1, e2 = (1, 0), (0, 1)

# [e2][e1] is anti-ordered; swapping costs one new wall on the diagonal
lhs = eval_product([(e2, 1), (e1, 1)], D)
rhs = eval_product([(e1, 1), ((1, 1), 1), (e2, 1)], D)
print("pentagon:", equals_mod(lhs, rhs).to_json())

# without the middle factor the first disagreement sits at (1,1)
print("commuted naively:", equals_mod(lhs, eval_product([(e1, 1), (e2, 1)], D)).to_json())

X, Y = dilog_series(e2, 1, D), dilog_series(e1, 1, D)
Z = log(dilog_element(e2, 1, D) * dilog_element(e1, 1, D))
print("coefficient of [X,Y]:", Z[(1, 1)] / bracket(X, Y)[(1, 1)])
rest = Z - X - Y - bracket(X, Y).scale(Fraction(1, 2))
print("coefficient of [X,[X,Y]]:", rest[(1, 2)] / bracket(X, bracket(X, Y))[(1, 2)])
print("coefficient of [Y,[X,Y]]:", rest[(2, 1)] / bracket(Y, bracket(X, Y))[(2, 1)])
