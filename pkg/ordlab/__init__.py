"""
ordlab - exact left-orderings of the solvable Baumslag-Solitar groups BS(1,n).

Covers the whole chain from arithmetic to dynamics:
1. Z[1/n] arithmetic and BS(1,n) normal forms
2. The affine action on the line, fixed points and stabilizers
3. The ten positive-cone types, conjugation, identification from an oracle
4. Dynamical realizations and the reduction to base-n tail equivalence
"""

__version__ = "1.0.0"
