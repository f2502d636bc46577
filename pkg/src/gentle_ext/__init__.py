"""Gentle algebras: strings, homotopy strings, resolutions, cohomology and Ext¹ bases."""

from gentle_ext.presentation import (
    Arrow,
    GentlePresentation,
    GentlenessError,
    Path,
    PresentationError,
    compose_modulo_I,
    load_fixture,
    load_presentation,
)
from gentle_ext.strings import BandWord, Letter, StringWord, Walk, parse_walk

__all__ = [
    "Arrow",
    "BandWord",
    "GentlePresentation",
    "GentlenessError",
    "Letter",
    "Path",
    "PresentationError",
    "StringWord",
    "Walk",
    "compose_modulo_I",
    "load_fixture",
    "load_presentation",
    "parse_walk",
]
