"""Exact enumeration and classification of N-qubit doilies.

Doilies are 15-point, 15-line generalized quadrangles GQ(2,2) whose points
are labeled by mutually compatible N-qubit Pauli observables; they live in
the rank-N binary symplectic polar space.  This package enumerates all of
them for a given N, classifies each by signature, character and
negative-line configuration, evaluates the closed-form counting formulas,
and computes contextuality degrees of the resulting signed incidence
systems.
"""

from .engine import Doily, InvariantError

__all__ = ["Doily", "InvariantError"]
