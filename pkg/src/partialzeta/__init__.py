"""Partial zeta functions of affine varieties over finite fields."""
