"""Executable lifting-property and injectivity checks for weak
equivalences on finite instances."""

from .errors import (DimensionBound, IncompatibleJ, NotInjective,
                     NotStabilized, ParseError, SearchBudgetExceeded,
                     StageBoundReached, UnsupportedBackend, VersionMismatch,
                     WeqtkError)
from .finset import FINSET, FinSet, FinSetMap, FinSetObj, finset_map
from .fincat import (CAT, Cat, FinCategory, FinFunctor, TabulatedCategory,
                     build_category, enumerate_functors)
from .kernel import (ComputableCategory, SquareMorphism, arrow_category,
                     enumerate_homs, is_iso, pushout, pushout_factor,
                     square_commutes)
from .lifting import (AlgInjWitness, Cone, ConeAlgInjWitness,
                      InjectivityVerdict, LiftingProblem, Status,
                      build_algebraic_injective, cone_injective, has_rlp,
                      is_injective, is_witness_morphism,
                      rlp_as_arrow_injectivity, sections_view,
                      witness_replays)

__version__ = "0.1.0"
