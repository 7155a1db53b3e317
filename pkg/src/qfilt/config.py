"""Size limits for the symbolic engine and the brute-force verifier.

Every bound that keeps a computation desk-scale lives here so that callers
can tighten or relax them in one place instead of hunting for magic numbers.
The defaults are generous enough for every shipped example and test.
"""

from dataclasses import dataclass

INF = float("inf")


@dataclass(frozen=True)
class Limits:
    """Caps enforced by validating constructors and enumeration routines."""

    max_prime: int = 257            # largest prime modulus for a coefficient field
    max_poly_enumeration: int = 2_000_000   # candidate count guard for irreducible sieves
    max_quotient_degree: int = 6    # modulus degree for divisor-lattice enumeration
    max_union_components: int = 64  # explicit disjoint-union component count
    max_oracle_elements: int = 4096     # finite-ring size for exhaustive tables
    max_oracle_ideals: int = 24     # ideal count for filter enumeration
    max_subcat_length: int = 8      # composition-length bound for module enumeration


DEFAULT_LIMITS = Limits()
