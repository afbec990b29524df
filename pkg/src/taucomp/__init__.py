"""Binary relations on the nonzero nonunit integers, their composition, and tau-factorizations."""

from .domain import Window, associates, bezout, crt_witness, divides
from .factor import (
    TauFactorization, enumerate_factorizations, factor_set, is_tau_atom, is_tau_prime,
    tau_divides, tau_divides_relation, ufd_diagnostic,
)
from .props import PROPERTIES, CheckReport, check, check_transfer
from .relations import (
    EMPTY, FULL, Compose, Extensional, IdealContainment, IdentityOn, ModN, Partition,
    Pattern, Product, Relation, coimage, compose, enumerate_pairs, holds, image, inverse_of, power,
)
from .search import RelationSampler, search_counterexample

__version__ = "0.1.0"
