"""Exception types shared across the package.

Every error that blames a concrete tuple of inputs carries that tuple as
attributes, so callers (and the CLI) can report the exact violation.
"""

from __future__ import annotations


class CardlabError(Exception):
    """Base class for all errors raised by this package."""


class InvalidSpec(CardlabError):
    """Raw order specification is structurally malformed."""


class NotReflexive(CardlabError):
    def __init__(self, relation: str, element: str):
        self.relation = relation
        self.element = element
        super().__init__(f"{relation} is missing the reflexive pair ({element}, {element})")


class NotAntisymmetric(CardlabError):
    def __init__(self, p: str, q: str):
        self.p, self.q = p, q
        super().__init__(f"le contains both ({p}, {q}) and ({q}, {p}) for distinct elements")


class NotTransitive(CardlabError):
    def __init__(self, relation: str, p: str, q: str, r: str):
        self.relation = relation
        self.p, self.q, self.r = p, q, r
        super().__init__(
            f"{relation} contains ({p}, {q}) and ({q}, {r}) but not ({p}, {r})"
        )


class NotContained(CardlabError):
    def __init__(self, p: str, q: str):
        self.p, self.q = p, q
        super().__init__(f"le contains ({p}, {q}) but lestar does not")


class UnknownElement(CardlabError):
    def __init__(self, element: str):
        self.element = element
        super().__init__(f"element {element!r} is not in the carrier")


class BudgetExceeded(CardlabError):
    """Requested enumeration is beyond the supported exhaustive budget."""


class SizeBudgetExceeded(CardlabError):
    def __init__(self, cap: int):
        self.cap = cap
        super().__init__(f"universe would exceed the size cap of {cap} atoms")


class UnknownAtom(CardlabError):
    def __init__(self, description: str):
        super().__init__(f"no such atom in this universe: {description}")


class UniverseMismatch(CardlabError):
    """Operands were built over different universes."""


class NotAFamily(CardlabError):
    def __init__(self, description: str):
        super().__init__(f"not a swappable atom family: {description}")


class IndexOutOfRange(CardlabError):
    def __init__(self, index: int, budget: int):
        self.index = index
        self.budget = budget
        super().__init__(f"index {index} is outside the budget range 0..{budget - 1}")


class NotAMember(CardlabError):
    def __init__(self, reason: str):
        self.reason = reason
        super().__init__(f"map is not a member of the truncated group: {reason}")


class InClosure(CardlabError):
    def __init__(self, description: str):
        super().__init__(f"atom lies in the closure of the given base: {description}")


class IndexBudgetExhausted(CardlabError):
    """No fresh family index is available; raising the index budget K helps."""

    def __init__(self, excluded: frozenset[int], suggested_k: int):
        self.excluded = excluded
        self.suggested_k = suggested_k
        shown = ",".join(str(i) for i in sorted(excluded))
        super().__init__(
            f"no fresh index below the budget (excluded: {{{shown}}}); rerun with K>={suggested_k}"
        )


class ShapeViolation(CardlabError):
    """A closure-shape assertion failed; this indicates a bug, not a user error."""

    def __init__(self, atom):
        self.atom = atom
        super().__init__(f"closure member {atom!r} violates the expected shape")


class NotStrictlyLess(CardlabError):
    def __init__(self, p: str, q: str):
        self.p, self.q = p, q
        super().__init__(f"({p}, {q}) is not strictly le-related")


class PreconditionViolated(CardlabError):
    def __init__(self, description: str):
        super().__init__(description)


class ParseError(CardlabError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)
