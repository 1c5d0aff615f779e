"""Domain-level reaction enumeration for DNA strand-displacement systems."""

from .model import (Complex, Domain, ModelError, Reaction, ReactionNetwork, RestingSet,
                    Strand, canonical_form, validate)
from .kinetics import KineticsConfig
from .moves import MoveConfig
from .enumerator import EnumConfig, EnumerationError, Enumerator, enumerate_network
from .condense import (CondensationError, CondensedNetwork, CondensedReaction, Condensation,
                       Fate, NumericalError, cartesian_sum, compute_fates, condense_reactions)
from .kernel import ParseError, parse_input, parse_kernel

__version__ = "0.1.0"
