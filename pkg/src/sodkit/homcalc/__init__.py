"""Graded Hom calculus for glued categories and augmented curves."""
from .augmentation import (
    AugmentationData,
    AugmentedSheaf,
    SerreImage,
    augmented_line_bundle,
    bn_cross_ext_table,
    bn_ext_table,
    serre_on_augmentation,
    serre_pair_check,
)
from .category import (
    FiniteGradedCategory,
    GlueTriple,
    GluedModel,
    GradedBimodule,
    build_category,
    gluing_hom,
    hom_complex,
)
from .graded import GradedComplex, GradedDims, cone_dims, fiber_dims
from .models import (
    epsilon,
    exotic_ext_table,
    exotic_triple,
    ipg_local_model,
    spherical_adherent_model,
    spherical_category,
)

__all__ = [
    "AugmentationData",
    "AugmentedSheaf",
    "FiniteGradedCategory",
    "GlueTriple",
    "GluedModel",
    "GradedBimodule",
    "GradedComplex",
    "GradedDims",
    "SerreImage",
    "augmented_line_bundle",
    "bn_cross_ext_table",
    "bn_ext_table",
    "build_category",
    "cone_dims",
    "epsilon",
    "exotic_ext_table",
    "exotic_triple",
    "fiber_dims",
    "gluing_hom",
    "hom_complex",
    "ipg_local_model",
    "serre_on_augmentation",
    "serre_pair_check",
    "spherical_adherent_model",
    "spherical_category",
]
