"""Three-valued answers with their justification trace."""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field


class Answer(enum.Enum):
    YES = "Yes"
    NO = "No"
    DEPTH_LIMITED = "DepthLimited"
    # a sufficient-condition rule whose hypotheses fail; says nothing either way
    NOT_APPLICABLE = "NotApplicable"

    @property
    def definite(self) -> bool:
        return self in (Answer.YES, Answer.NO)


RULES = (
    "Thm3.1", "Thm3.2", "Thm3.2-d′", "Cor2.3", "Cor3.5-1", "Cor3.5-2",
    "Cor3.5-2′", "Thm4.1", "Thm4.1-d′", "Cor4.6", "Thm5.1", "commensurate",
)


@dataclass(frozen=True)
class Verdict:
    """A decision plus the rule that produced it and re-checkable evidence.

    ``witnesses`` only holds JSON-compatible values (ints, strings, lists,
    dicts) so that machine output can be parsed back and re-verified.
    """

    answer: Answer
    rule: str
    witnesses: dict = field(default_factory=dict)
    depth_used: int = 0
    note: str = ""

    def __post_init__(self):
        if self.rule not in RULES:
            raise ValueError(f"unknown rule {self.rule!r}")

    def __bool__(self):
        raise TypeError("a Verdict is three-valued; compare .answer instead")

    def to_lines(self) -> list[str]:
        """``key: value`` lines; witness values are compact JSON."""
        lines = [
            f"answer: {self.answer.value}",
            f"rule: {self.rule}",
            f"depth_used: {self.depth_used}",
        ]
        if self.note:
            lines.append(f"note: {self.note}")
        for key in sorted(self.witnesses):
            value = json.dumps(self.witnesses[key], separators=(",", ":"), ensure_ascii=False)
            lines.append(f"witness.{key}: {value}")
        return lines

    @classmethod
    def from_lines(cls, lines) -> "Verdict":
        fields = {}
        witnesses = {}
        for raw in lines:
            line = raw.rstrip("\n")
            if not line.strip():
                continue
            key, sep, value = line.partition(": ")
            if not sep:
                raise ValueError(f"not a key: value line: {line!r}")
            if key.startswith("witness."):
                witnesses[key[len("witness."):]] = json.loads(value)
            else:
                fields[key] = value
        try:
            return cls(
                answer=Answer(fields["answer"]),
                rule=fields["rule"],
                witnesses=witnesses,
                depth_used=int(fields.get("depth_used", 0)),
                note=fields.get("note", ""),
            )
        except KeyError as exc:
            raise ValueError(f"missing field {exc.args[0]!r}") from None
