from fractions import Fraction
from typing import TypeAlias

Weight: TypeAlias = tuple[int, ...]
"""
Integer coordinates in the simple-root basis ℤ^Δ.

Position ``i - 1`` holds the coefficient of the simple root α_i.
"""

HalfWeight: TypeAlias = tuple[Fraction, ...]
"""
Coordinates in ½ℤ^Δ, used for ρ and ρ_h.
"""

Word: TypeAlias = tuple[int, ...]
"""
Letters of a word in the simple reflections, 1-based: ``(1, 2, 1)`` is w₁w₂w₁.
"""

Parity: TypeAlias = tuple[int, ...]
"""
Vector over 𝔽₂^Δ, entries 0 or 1.
"""

Exponents: TypeAlias = tuple[int, ...]
"""
Exponent function ψ listed along a convex order: position ``k`` is ψ(β_{k+1}).
"""
