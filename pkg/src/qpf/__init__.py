"""Exact computer algebra for quantum determinants, Pfaffians and hyper-Pfaffians."""

from .errors import DomainError, InvalidPermutationError, ModeError
from .qscalar import EXACT, LaurentScalar, ScalarMode
from .qmatrix import MatPoly, normal_form, quantum_det, quantum_minor
from .qforms import Form, wedge
from .qpfaff import BPoly, pf_matchings, pf_recursive, substitute_b
from .qhyper import HPoly, hyper_substitute, hyperpf_recursive, modulus_for
from .idealcheck import membership, relation_generators, verify_in_B

__version__ = "0.1.0"
