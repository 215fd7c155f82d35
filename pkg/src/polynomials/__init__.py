"""Stirling numbers and the chromatic, independence and matching polynomials"""
from .graph_polynomial import Basis, GraphPolynomial, PolynomialKind, to_falling_factorial, to_monomial
from .stirling import StirlingRow, stirling_argmax, stirling_row
from .invariants import (PartitionVector, chromatic_partition_vector, chromatic_poly,
                         independence_poly, matching_poly, polynomial_of)
from .oracles import count_proper_colorings
