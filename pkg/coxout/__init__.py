"""
coxout
------
Decides whether the outer automorphism group of a graph product of cyclic
groups of prime power order is finite, virtually abelian or large, with
explicit SIL / STIL / FSIL witnesses, and machine-checks the supporting
statements about partial conjugations inside the group itself.

Version: 1.0.0
"""

__version__ = "1.0.0"
