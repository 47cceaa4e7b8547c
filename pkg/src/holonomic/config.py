"""Computation caps and the failure raised when one is exceeded.

Termination of the completion and telescoping loops is guaranteed by theory
for holonomic inputs, but no bound is computed; the caps below turn a
runaway computation into an explicit failure instead of a silent hang.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from pathlib import Path


class CapExceeded(RuntimeError):
    """A configured iteration or degree cap was hit before completion."""


@dataclass(frozen=True)
class Caps:
    buchberger_pairs: int = 10_000       # S-pair reductions per completion run
    staircase_limit: int = 10_000        # monomials enumerated before declaring non-finite
    heuristic_support_cap: int = 6       # max total degree of the telescoper support
    heuristic_degree_cap: int = 20       # max certificate numerator degree
    heuristic_multiplicity_cap: int = 3  # denominator escalation rounds
    takayama_degree_cap: int = 10        # max degree of v-power multiplier enlargement
    find_relation_support_cap: int = 8   # max total degree of the relation ansatz

    def override(self, **kwargs) -> "Caps":
        return replace(self, **kwargs)

    @staticmethod
    def from_file(path: str | Path) -> "Caps":
        """Read ``key = value`` lines; unknown keys are rejected."""
        values = {}
        fields = set(Caps.__dataclass_fields__)
        for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected key = value")
            key, _, val = line.partition("=")
            key = key.strip()
            if key not in fields:
                raise ValueError(f"{path}:{lineno}: unknown cap {key!r}")
            values[key] = int(val.strip())
        return Caps(**values)


DEFAULT_CAPS = Caps()
