"""Finite quasi-ordered index sets and cofinality of sub-posets.

Antisymmetry is deliberately not required: two elements may be related both
ways and are still kept distinct.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InvariantViolation, PreconditionError


@dataclass(frozen=True)
class FinitePoset:
    elements: tuple
    leq: frozenset  # pairs (a, b) meaning a <= b

    def __post_init__(self):
        known = set(self.elements)
        if len(known) != len(self.elements):
            raise InvariantViolation("duplicate poset elements")
        for a, b in self.leq:
            if a not in known or b not in known:
                raise InvariantViolation("relation on unknown element", witness=(a, b))
        for a in self.elements:
            if (a, a) not in self.leq:
                raise InvariantViolation("relation not reflexive", witness=a)
        for a, b in self.leq:
            for c, d in self.leq:
                if b == c and (a, d) not in self.leq:
                    raise InvariantViolation("relation not transitive", witness=(a, b, d))

    @classmethod
    def from_pairs(cls, elements, pairs, close=True):
        """Build from generating pairs, taking the reflexive-transitive closure."""
        elements = tuple(elements)
        rel = {(a, b) for a, b in pairs}
        if close:
            rel |= {(a, a) for a in elements}
            changed = True
            while changed:
                changed = False
                for a, b in list(rel):
                    for c, d in list(rel):
                        if b == c and (a, d) not in rel:
                            rel.add((a, d))
                            changed = True
        return cls(elements, frozenset(rel))

    def related(self, a, b):
        return (a, b) in self.leq

    def strict_pairs(self):
        """Related pairs (a, b) with a != b, in deterministic order."""
        return sorted((a, b) for a, b in self.leq if a != b)

    def is_directed(self):
        for a in self.elements:
            for b in self.elements:
                if not any(self.related(a, c) and self.related(b, c)
                           for c in self.elements):
                    return False
        return True

    def restrict(self, subset):
        subset = tuple(s for s in self.elements if s in set(subset))
        rel = frozenset((a, b) for a, b in self.leq if a in subset and b in subset)
        return FinitePoset(subset, rel)


def cofinality_class(poset, subset):
    """Strongest cofinality class of a sub-poset: 'none', 'weak' or 'strong'.

    Weak: every element sits below some subset element.  Strong: additionally
    every pair of subset elements above a common element has an upper bound
    inside the subset (the square-completion condition collapses to upper
    bounds because hom-sets of a quasi-order carry at most one morphism).
    """
    subset = list(dict.fromkeys(subset))
    known = set(poset.elements)
    for s in subset:
        if s not in known:
            raise PreconditionError("subset element not in poset", witness=s)
    sub = set(subset)
    for lam in poset.elements:
        if not any(poset.related(lam, w) for w in sub):
            return "none"
    for lam in poset.elements:
        above = [w for w in sub if poset.related(lam, w)]
        for w1 in above:
            for w2 in above:
                if not any(poset.related(w1, w) and poset.related(w2, w)
                           for w in sub):
                    return "weak"
    return "strong"
