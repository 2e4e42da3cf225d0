"""stabreg: exact geometry of multistep-method stability regions.

Computes stability angles, stability radii, inscribed parabolas,
stiff-stability abscissae, and imaginary-axis intervals of linear multistep
and multiderivative multistep methods by algebraizing root locus curves and
applying recursive Schur-Cohn root-condition tests in exact arithmetic.
"""

__version__ = "0.1.0"
