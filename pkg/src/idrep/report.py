"""Verdicts of point-wise checks, with a stable line-oriented serialisation."""

from __future__ import annotations

from dataclasses import dataclass

__all__ = ["Report", "PASS", "FAIL", "INCONCLUSIVE"]

PASS = "pass"
FAIL = "fail"
INCONCLUSIVE = "inconclusive-only"

MAX_WITNESSES = 10


@dataclass(frozen=True)
class Report:
    """Partition of the tested points into verified, violated and inconclusive.

    Points keep the order in which they were tested (window order for
    window checks), so the serialisation is reproducible.
    """

    relation: str
    params: tuple = ()
    window: str = ""
    verified: tuple = ()
    violated: tuple = ()
    inconclusive: tuple = ()
    notes: tuple = ()

    def __post_init__(self):
        for name in ("params", "verified", "violated", "inconclusive", "notes"):
            object.__setattr__(self, name, tuple(getattr(self, name)))
        seen = set()
        for pt in self.verified + self.violated + self.inconclusive:
            if pt in seen:
                raise ValueError(f"point {pt} classified twice")
            seen.add(pt)

    @property
    def verdict(self) -> str:
        if self.violated:
            return FAIL
        return PASS if self.verified else INCONCLUSIVE

    @property
    def ok(self) -> bool:
        return not self.violated

    @property
    def conclusive(self) -> tuple:
        return self.verified + self.violated

    def items(self) -> list[tuple[str, str]]:
        out = [("relation", self.relation)]
        out += [(f"param.{k}", str(v)) for k, v in self.params]
        out += [
            ("window", self.window),
            ("verified", str(len(self.verified))),
            ("violated", str(len(self.violated))),
            ("inconclusive", str(len(self.inconclusive))),
            ("verdict", self.verdict),
        ]
        for name in ("verified", "violated", "inconclusive"):
            pts = getattr(self, name)[:MAX_WITNESSES]
            if pts:
                out.append((f"witness.{name}", " ".join(str(p) for p in pts)))
        out += [(f"note.{k}", n) for k, n in enumerate(self.notes)]
        return out

    def to_text(self) -> str:
        return "\n".join(f"{k}: {v}" for k, v in self.items())
