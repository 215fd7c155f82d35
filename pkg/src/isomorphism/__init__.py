"""Canonical forms, isomorphism tests and Burnside orbit counts"""
from .canonical import CanonicalForm, are_isomorphic, canonical_form
from .burnside import (SubsetModel, count_labeled, count_nonisomorphic,
                       count_nonisomorphic_general, count_nonisomorphic_runiform)
