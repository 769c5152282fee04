"""Exception hierarchy shared by all modules."""


class BFreeError(Exception):
    """Base class for all library errors."""


class RepeatedOrUnordered(BFreeError):
    """Element list is not strictly increasing."""


class ContainsOne(BFreeError):
    """1 was offered as a modulus; it would forbid every integer."""


class NotCoprime(BFreeError):
    """Two moduli share a factor; carries the offending pair."""

    def __init__(self, a, b):
        super().__init__(f"moduli {a} and {b} share gcd > 1")
        self.pair = (a, b)


class ModuliNotCoprime(BFreeError):
    """Congruence system with non-coprime moduli."""


class Overflow(BFreeError):
    """Modulus product exceeded the configured cap."""


class NotFoundInTruncation(BFreeError):
    """No element of the finite modulus list satisfies the request; extend it."""


class LengthTooLarge(BFreeError):
    """Word length beyond the configured enumeration bound."""


class WindowTooShort(BFreeError):
    """Word too short for the code radius."""


class RadiusTooSmall(BFreeError):
    """Requested offset does not fit inside the code radius."""


class CapExceeded(BFreeError):
    """Search parameter beyond its configured cap."""


class DegenerateCase(BFreeError):
    """2 is a modulus and the period is even: no coset witness exists here."""


class OddTranslation(BFreeError):
    """Parity-class translation must be even."""
