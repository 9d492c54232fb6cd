"""Exact verification of integral orders in composition algebras over Q(sqrt 5).

Golden-ring arithmetic, Cayley-Dickson algebras, orders and their unit
shells, root-system checks, lattice duality and the exhaustive gluing
searches over the icosian double, with deterministic certificates.
"""

__version__ = "0.1.0"
