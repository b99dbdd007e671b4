"""Equilibria of a media market with bargained content fees under three vertical structures."""

from .model import ModelParams, VerticalStructure, validate

__all__ = ["ModelParams", "VerticalStructure", "validate"]
__version__ = "0.1.0"
