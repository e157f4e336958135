"""Monoid semiflows on metric spaces: concrete representations, exact
property deciders, witness probes, and corpus-level consistency checks."""

__version__ = "0.1.0"

from .finite import FiniteSemiflow
from .monoid import (
    ResidueClassSet,
    SyndeticVerdict,
    certify_syndetic_window,
    is_syndetic,
    submonoid_closure_contains,
)
from .numeric import NumericCascade, commuting_mult, doubling, logistic, rotation, tent
from .sft import EventuallyPeriodicPoint, SftSystem, canonical_point
from .systems import (
    SpecError,
    act,
    distance,
    fixer,
    is_periodic,
    load_system,
    orbit,
    save_system,
    system_from_dict,
    system_to_dict,
)
from .verdicts import (
    CheckStatus,
    ConsistencyVerdict,
    PropertyProfile,
    PropertyValue,
    Status,
    Verdict,
    WitnessRecord,
)

__all__ = [
    "EventuallyPeriodicPoint",
    "FiniteSemiflow",
    "NumericCascade",
    "ResidueClassSet",
    "SftSystem",
    "SpecError",
    "SyndeticVerdict",
    "Status",
    "CheckStatus",
    "Verdict",
    "WitnessRecord",
    "PropertyProfile",
    "PropertyValue",
    "ConsistencyVerdict",
    "act",
    "canonical_point",
    "certify_syndetic_window",
    "commuting_mult",
    "distance",
    "doubling",
    "fixer",
    "is_periodic",
    "is_syndetic",
    "load_system",
    "logistic",
    "orbit",
    "rotation",
    "save_system",
    "submonoid_closure_contains",
    "system_from_dict",
    "system_to_dict",
    "tent",
]
