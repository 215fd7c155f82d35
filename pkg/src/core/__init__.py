"""Hypergraph model, census modes, family generators and file formats"""
from .hypergraph import (Hypergraph, is_independent, is_r_uniform, make_hypergraph,
                         superset_extension)
from .modes import CensusMode, ModeKind
from .families import FamilyKind, FamilySpec, generate_family, random_hypergraph
