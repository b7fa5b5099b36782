"""Exact Hochschild cochain computations for the conformal algebra Cend_{1,x}.

Every 2-cocycle with coefficients in a bimodule is split constructively as a
coboundary, with a transcript of exact identity checks.
"""

__version__ = "0.1.0"

from .algebra import AlgElem, X, basis_product, check_associativity, locality, nproduct, xpow
from .bimodule import (BUILTINS, BimoduleSpec, ModElem, RuleBimodule, TableBimodule, act_left,
                       act_right, apply_op, builtin_bimodule, check_bimodule_axioms, direct_sum)
from .cochain import (Cochain1, Cochain2, SeedData, d1, d2_eval, is_cocycle, locality_bound,
                      reconstruct_from_seeds, seeds_of)
from .errors import (CendError, ClosureDiverged, MissingTableEntry, NoSolution, NormalizationFailed,
                     NotACocycle, NotClosed, NotSemisimple, Unbounded)
from .exact import D, ONE, DPoly, Rat, rat
from .extension import (ExtElem, ExtensionAlgebra, check_extension_associativity, embedding_closure,
                        ext, ext_product, splitting_embedding)
from .report import Report
from .splitter import (SplitBounds, SplitCertificate, l1_eigendecompose, normalize_cocycle,
                       orbit_subspace, split_cocycle)

__all__ = [name for name in dir() if not name.startswith("_")]
