"""p-torsion invariants of hyperelliptic curves over finite fields and
(Z/2)^n fibre-product constructions with a point-counting oracle."""

__version__ = "0.1.0"
