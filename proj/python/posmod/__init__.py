"""Positive model theory over finite classes of structures."""

from ._posmod import (
    DeltaSet,
    Error,
    Formula,
    ModelClass,
    Morphism,
    ParseError,
    Sentence,
    Span,
    Structure,
    UnknownName,
    Workspace,
    amalgamate,
    bundled_names,
    classify,
    entails,
    free_amalgam,
    homomorphisms,
    is_apc,
    is_immersion,
    is_model_complete,
    is_pc,
    is_s_immersion_absolute,
    is_strong_basis,
    pc_members,
    run_claims,
)


def digraphs():
    return Workspace.bundled("digraphs")


def unary():
    return Workspace.bundled("unary")
