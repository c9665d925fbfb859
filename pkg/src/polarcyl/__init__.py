"""Exact Picard-lattice arithmetic and polar-cylinder certificates.

A calculator for the surfaces obtained by blowing up the weighted
projective plane P(1,1,m) at m+4 points in general position: exact
intersection theory on the minimal resolution, transfer to the singular
surface, effective-cone and Fujita-type classification by exact linear
programming, cylinder boundary-divisor construction with verification
transcripts, and lattice-level replay of the supporting blow-down
pipelines.  Every number is an exact rational; there is no floating
point anywhere.
"""

from .blowdown import (BlowupModel, ContractionSequence, LemmaReport,
                       contract_set, extend_two_point_blowup,
                       verify_lemma_configuration)
from .cone import (EffectiveConeModel, FujitaResult, MembershipCertificate,
                   ample_screen, classify_polarization, cone_membership,
                   enumerate_negative_classes, fujita_face, fujita_invariant,
                   fujita_invariant_certified)
from .cylinder import (CylinderCertificate, VerificationReport, construct_type_B,
                       construct_type_C, solve_on_support, verify_certificate)
from .errors import (ConeModelInsufficientError, HypothesisNotMetError,
                     InfeasibleSupportError, InvalidClassError,
                     InvalidDecompositionError, InvalidParameterError,
                     NotAmpleError, NotContractibleError, PolarCylError,
                     UnrecognizedFaceError)
from .lattice import (CurveCatalogEntry, DivisorClass, SurfaceModel,
                      make_surface, parse_label)
from .singular import (anticanonical_on_S, canonical_on_S, discrepancy,
                       intersect_on_S, pullback, pushforward, qlinear_equal_S,
                       singular_class)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
