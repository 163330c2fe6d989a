"""Evaluate sympy expressions into package objects.

Used for golden data, CLI input and elliptic relations, where formulas are
written by hand in terms of a, b, z, lambda, E, e1, e2, e3, g2, g3, ...
"""
from __future__ import annotations

from fractions import Fraction
from typing import Mapping

import sympy


def parse(text: str):
    text = text.replace("^", "**")
    local = {name: sympy.Symbol(name) for name in ("a", "b", "z", "E", "e1", "e2", "e3", "g2", "g3", "wp", "dwp")}
    # "lambda" is a Python keyword; parse it under another name but keep the symbol called lambda
    local["lam_"] = sympy.Symbol("lambda")
    text = text.replace("lambda", "lam_")
    return sympy.sympify(text, locals=local)


def evaluate(expr, env: Mapping[str, object], one):
    """Evaluate ``expr`` with +, *, integer powers and rationals, symbols taken from ``env``.

    ``one`` is the multiplicative identity of the target ring; values in
    ``env`` only need ring operations (and inversion for negative powers).
    """
    if isinstance(expr, str):
        expr = parse(expr)
    if expr.is_Rational:
        return one * Fraction(int(expr.p), int(expr.q))
    if expr.is_Symbol:
        name = str(expr)
        if name not in env:
            raise KeyError(f"unknown symbol {name!r}")
        return env[name]
    if expr.is_Add:
        out = one * 0
        for arg in expr.args:
            out = out + evaluate(arg, env, one)
        return out
    if expr.is_Mul:
        out = one
        for arg in expr.args:
            out = out * evaluate(arg, env, one)
        return out
    if expr.is_Pow:
        base, ex = expr.args
        if not ex.is_Integer:
            raise ValueError(f"non-integer power in {expr}")
        n = int(ex)
        val = evaluate(base, env, one)
        if n < 0:
            return one * (val ** (-n)).inverse() if hasattr(val, "inverse") else one / val ** (-n)
        return val**n
    raise ValueError(f"unsupported expression node {expr!r}")
