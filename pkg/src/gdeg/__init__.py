"""Exact equivariant Brouwer degrees over Burnside rings of (D1 x Z2) x Gamma."""

__version__ = "0.1.0"
