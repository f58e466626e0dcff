"""Exact computation with Nichols algebras of diagonal type.

Given a finite-rank diagonal braiding whose entries are roots of unity, this
package computes the attached Weyl groupoid, the positive root system, the
dimension of the Nichols algebra, and a minimal presentation by generators
and relations, together with an independent quantum-symmetrizer oracle that
certifies each emitted relation.
"""

from __future__ import annotations

__version__ = "0.1.0"
