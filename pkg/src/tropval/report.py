"""Pass/fail bookkeeping shared by the axiom checkers."""
from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class Witness:
    """A concrete counterexample: the offending elements and what went wrong."""

    elements: tuple
    detail: str = ""

    def __str__(self) -> str:
        elems = ",".join(str(e) for e in self.elements)
        return f"({elems})" + (f" {self.detail}" if self.detail else "")


@dataclass
class AxiomReport:
    """Ordered map from axiom name to ``None`` (pass) or a :class:`Witness`."""

    results: dict[str, Witness | None] = field(default_factory=dict)

    def record(self, axiom: str, witness: Witness | None = None) -> None:
        # first failure wins; later passes never overwrite it
        if self.results.get(axiom) is None:
            self.results[axiom] = witness

    def fail(self, axiom: str, *elements, detail: str = "") -> None:
        self.record(axiom, Witness(tuple(elements), detail))

    def passed(self, axiom: str) -> bool:
        return axiom in self.results and self.results[axiom] is None

    def witness(self, axiom: str) -> Witness | None:
        return self.results.get(axiom)

    @property
    def ok(self) -> bool:
        return all(w is None for w in self.results.values())

    def failures(self) -> list[str]:
        return [name for name, w in self.results.items() if w is not None]

    def merge(self, other: AxiomReport) -> AxiomReport:
        for name, w in other.results.items():
            self.record(name, w)
        return self

    def lines(self) -> list[str]:
        out = []
        for name, w in self.results.items():
            if w is None:
                out.append(f"{name}=pass")
                continue
            elems = ",".join(str(e) for e in w.elements)
            line = f"{name}=fail witness=({elems})"
            out.append(line + (f' detail="{w.detail}"' if w.detail else ""))
        return out

    def __str__(self) -> str:
        return "\n".join(self.lines())
