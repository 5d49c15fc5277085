"""
Per-arity integer sequences (dimensions, rule counts, avoider counts)
"""

from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Set


@dataclass
class ArityTable:
    """
    An integer sequence indexed by arity.

    Attributes:
        label: Short name used in reports
        values: {arity: value}
        unverified: Arities whose value is not certified as a dimension
        cutoff: First arity that was not computed, if the run stopped early
    """
    label: str
    values: Dict[int, int] = field(default_factory=dict)
    unverified: Set[int] = field(default_factory=set)
    cutoff: Optional[int] = None

    @classmethod
    def from_sequence(cls, label, sequence, start=1):
        return cls(label, {start + k: int(v) for k, v in enumerate(sequence)})

    def __getitem__(self, n):
        return self.values[n]

    def __setitem__(self, n, value):
        self.values[n] = int(value)

    def __contains__(self, n):
        return n in self.values

    def __len__(self):
        return len(self.values)

    def arities(self):
        return sorted(self.values)

    def as_list(self, start=1, stop=None):
        """Values for arities start..stop (inclusive) as a list."""
        if stop is None:
            stop = max(self.values) if self.values else start - 1
        return [self.values[n] for n in range(start, stop + 1)]

    def rows(self):
        """{label, n, value} rows for table emission."""
        return [
            {"label": self.label, "n": n, "value": self.values[n],
             "verified": n not in self.unverified}
            for n in self.arities()
        ]

    def to_dict(self):
        return {
            "label": self.label,
            "values": {str(n): self.values[n] for n in self.arities()},
            "unverified": sorted(self.unverified),
            "cutoff": self.cutoff,
        }

    def __str__(self):
        return " ".join(str(v) for v in self.as_list(min(self.values))) if self.values else ""


def first_mismatch(table, expected, start=1):
    """
    Compare a table against an expected sequence.

    Returns:
        None if equal on every expected arity, else (arity, got, expected)
    """
    for offset, value in enumerate(expected):
        n = start + offset
        got = table.values.get(n)
        if got != value:
            return n, got, value
    return None
