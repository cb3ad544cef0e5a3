"""Seeded random expression trees for the expression and ground-truth tests."""

import random
from fractions import Fraction

from mathcert.expr import BinOp, Call, Const, Neg, Rat, Var

SAFE_UNARY = ("sqrt", "exp", "log", "sin", "cos", "atan", "sinh", "tanh", "cosh", "asin", "acos", "tan")
INTERVAL_UNARY = ("sqrt", "exp", "log")


def leaf(rng: random.Random, variables=()):
    roll = rng.random()
    if variables and roll < 0.2:
        return Var(rng.choice(variables))
    if roll < 0.45:
        return Const(rng.choice(["pi", "e", "euler", "catalan"]))
    den = rng.choice([1, 1, 2, 3, 7, 10])
    return Rat(Fraction(rng.randint(1 if den > 1 else 0, 50), den))


def tree(rng: random.Random, depth: int, variables=(), functions=SAFE_UNARY, special=True):
    if depth <= 0 or rng.random() < 0.25:
        return leaf(rng, variables)
    roll = rng.random()
    if roll < 0.45:
        op = rng.choice(["add", "sub", "mul", "div"])
        return BinOp(op, tree(rng, depth - 1, variables, functions, special),
                     tree(rng, depth - 1, variables, functions, special))
    if roll < 0.55:
        return BinOp("pow", tree(rng, depth - 1, variables, functions, special), Rat(rng.randint(0, 4)))
    if roll < 0.62:
        return Neg(tree(rng, depth - 1, variables, functions, special))
    if special and roll < 0.70:
        if rng.random() < 0.5:
            return Call("gamma", (Rat(Fraction(rng.randint(1, 30), rng.choice([1, 2, 3, 4]))),))
        return Call("zeta", (Rat(rng.randint(2, 9)),))
    if roll < 0.75:
        return Call("root", (tree(rng, depth - 1, variables, functions, special), Rat(rng.randint(2, 5))))
    fn = rng.choice(functions)
    return Call(fn, (tree(rng, depth - 1, variables, functions, special),))
