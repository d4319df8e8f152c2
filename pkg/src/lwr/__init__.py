"""Wreath products of Lie algebras and the embedding of extensions into them."""

from .catalog import catalog
from .embedding import (
    Certificate,
    EmbeddingTables,
    build_tables,
    check_tables,
    eval_phi,
    verify_all,
    verify_homomorphism,
    verify_injectivity,
    verify_relations,
)
from .extension import (
    ExtensionAlgebra,
    ExtensionData,
    InvalidFactorSet,
    NotAnIdeal,
    ProjectionLeak,
    build_extension,
    extract_factor_set,
    validate_factor_set,
)
from .hom import DegreeBudgetExceeded, HomSpace, TruncatedHom, WreathElement
from .lie import LieAlgebra, RightAction, ValidationReport, validate_derivation_action, validate_lie
from .pbw import Enveloping, coproduct, monomials_up_to, splittings
from .scalars import QQ, CharacteristicTwo, FieldSpec, Residue, scalar_arith, scalar_parse

__version__ = "0.1.0"
