from __future__ import annotations

from dataclasses import dataclass

from ..coding import seq_code, seq_decode


@dataclass(frozen=True)
class FinSeq:
    entries: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(int(a) for a in self.entries))
        if any(a < 0 for a in self.entries):
            raise ValueError("finite sequences hold natural numbers")

    @property
    def code(self) -> int:
        return seq_code(self.entries)

    @classmethod
    def from_code(cls, code: int) -> "FinSeq":
        return cls(seq_decode(code))

    def __len__(self):
        return len(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def __iter__(self):
        return iter(self.entries)

    def concat(self, other) -> "FinSeq":
        return FinSeq(self.entries + tuple(other))

    __mul__ = concat

    def extend(self, a: int) -> "FinSeq":
        return FinSeq(self.entries + (a,))

    def is_prefix_of(self, other) -> bool:
        other = tuple(other)
        return other[:len(self.entries)] == self.entries

    def __str__(self):
        return "⟨" + ",".join(map(str, self.entries)) + "⟩"


def initial_segment(f, n: int) -> FinSeq:
    """The sequence (f(0), ..., f(n-1))."""
    return FinSeq(tuple(f(i) for i in range(n)))
