from .dyadic import ONE, ZERO, Dyadic, DyadicOverflow
from .balls import THETA, ComplexBall, RealBall, TriBool, ball_arith, int_compare

__all__ = [
    "Dyadic",
    "DyadicOverflow",
    "ZERO",
    "ONE",
    "RealBall",
    "ComplexBall",
    "TriBool",
    "THETA",
    "ball_arith",
    "int_compare",
]
