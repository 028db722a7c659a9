"""Exactness reports comparing a geometric criterion with an algebraic oracle."""
import json
from dataclasses import dataclass, field


@dataclass
class ExactnessReport:
    type_label: str
    criterion: str
    total: int
    mismatches: list = field(default_factory=list)
    metadata: dict = field(default_factory=dict)

    @property
    def exact(self):
        return not self.mismatches

    @property
    def false_negatives(self):
        """Objects the oracle accepts but the criterion rejects."""
        return [m for m in self.mismatches if m["algebraic"] and not m["geometric"]]

    @property
    def false_positives(self):
        return [m for m in self.mismatches if m["geometric"] and not m["algebraic"]]

    def to_dict(self):
        return {
            "type": self.type_label,
            "criterion": self.criterion,
            "total": self.total,
            "exact": self.exact,
            "mismatch_count": len(self.mismatches),
            "mismatches": self.mismatches,
            "metadata": self.metadata,
        }

    @classmethod
    def from_dict(cls, data):
        return cls(data["type"], data["criterion"], data["total"], list(data["mismatches"]), dict(data["metadata"]))

    def to_json(self):
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)

    def to_text(self, limit=10):
        status = "exact" if self.exact else f"NOT exact ({len(self.mismatches)} mismatches)"
        lines = [f"{self.type_label} {self.criterion}: {status} over {self.total}"]
        for m in self.mismatches[:limit]:
            geo = "yes" if m["geometric"] else "no"
            alg = "yes" if m["algebraic"] else "no"
            lines.append(f"  {m['object']}: criterion={geo} oracle={alg}")
        if len(self.mismatches) > limit:
            lines.append(f"  ... {len(self.mismatches) - limit} more")
        return "\n".join(lines)
