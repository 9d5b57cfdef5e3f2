"""Exception hierarchy shared by every module.

All toolkit errors derive from RoughAlgError so callers (and the CLI)
can tell bad input apart from genuine bugs.
"""

from __future__ import annotations


class RoughAlgError(Exception):
    """Base class for all toolkit errors."""


# universes and subsets

class DuplicateLabelError(RoughAlgError):
    """Two identical atoms in a universe declaration."""


class EmptyUniverseError(RoughAlgError):
    """A universe needs at least one element."""


class UnknownElementError(RoughAlgError):
    """Label not present in the universe (or outside a mapping domain)."""


class UniverseMismatchError(RoughAlgError):
    """Operands live over different universes; no coercion is attempted."""


class EmptySubsetError(RoughAlgError):
    """A nonempty subset was required."""


# partitions

class EmptyBlockError(RoughAlgError):
    """Partition blocks must be nonempty."""


class OverlapError(RoughAlgError):
    """Two partition blocks share an element."""


class IncompleteCoverError(RoughAlgError):
    """The blocks fail to cover the universe."""


# operation tables

class EmptyCarrierError(RoughAlgError):
    """A table needs a nonempty carrier."""


class MissingEntryError(RoughAlgError):
    """An entry of carrier x carrier was not supplied."""


class ExtraEntryError(RoughAlgError):
    """An entry outside carrier x carrier (or a duplicate) was supplied."""


class UnknownResultLabelError(RoughAlgError):
    """A table cell names an element outside the universe."""


class NotInCarrierError(RoughAlgError):
    """Element (or subset) expected inside the table's carrier."""


class CarrierNotFullError(RoughAlgError):
    """Operation required a table defined on the whole universe."""


# mappings

class MissingPairError(RoughAlgError):
    """A mapping left some domain element without an image."""


class DuplicatePairError(RoughAlgError):
    """A mapping assigned two images to one domain element."""


class UnknownCodomainLabelError(RoughAlgError):
    """A mapping image lies outside the codomain universe."""


class CarrierMismatchError(RoughAlgError):
    """Mapping endpoints do not line up with the tables' carriers."""


class DomainNotUpperError(RoughAlgError):
    """Rough morphism checks need domain/target equal to the upper approximations."""


class DomainMismatchError(RoughAlgError):
    """Composition requires the image of the inner map inside the outer domain."""


# enumeration

class SizeOutOfRangeError(RoughAlgError):
    """Requested enumeration size outside the supported range."""


class EmptySetError(RoughAlgError):
    """Mapping enumeration needs nonempty domain and codomain."""
