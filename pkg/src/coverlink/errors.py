"""Exception hierarchy shared across the toolkit.

Three behavioural families matter to callers (and to the CLI exit codes):
bad input, inconclusive bounded searches, and failed mathematical checks.
"""


class CoverlinkError(Exception):
    """Base class for all toolkit errors."""


class InputError(CoverlinkError):
    """Malformed or inconsistent input.  CLI exit code 3."""


class Inconclusive(CoverlinkError):
    """A bounded enumeration or search hit its limit.  Says nothing about
    the true answer.  CLI exit code 2."""


# ---- input / consistency errors ----

class ParseError(InputError):
    pass


class UnknownGenerator(InputError):
    pass


class TableMismatch(InputError):
    """Coset table does not belong to the presentation (or is not regular
    where a regular table is required)."""


class MissingImage(InputError):
    pass


class MalformedPd(InputError):
    pass


class GroupMismatch(InputError):
    """Operands live over different finite groups."""


class BadIndex(InputError):
    pass


class IdentitySelfClasp(InputError):
    """Self-clasps along the identity element are meaningless."""


class NotHermitian(InputError):
    pass


class FramingInconsistent(InputError):
    """Diagonal augmentation disagrees with the declared downstairs framing."""


class MuMismatch(InputError):
    """Quadratic refinement does not satisfy lambda_ii = mu_i + involute(mu_i)."""


class NotEven(InputError):
    pass


class NotUnimodular(InputError):
    pass


class NonzeroSignature(InputError):
    pass


class Degenerate(InputError):
    pass


# ---- inconclusive outcomes ----

class LimitExceeded(Inconclusive):
    """Coset enumeration ran out of room.  Not a proof of infiniteness."""

    def __init__(self, max_cosets: int):
        super().__init__(f"coset limit of {max_cosets} exceeded (inconclusive)")
        self.max_cosets = max_cosets


class SearchExhausted(Inconclusive):
    """Bounded isotropic-vector search failed.  Not a proof of absence."""


# ---- failed checks ----

class SignatureObstructed(CoverlinkError):
    """Signature is not a multiple of the stabilization step.  CLI exit 1."""
