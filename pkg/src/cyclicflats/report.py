"""Machine-readable pass/fail reports."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any


@dataclass
class Report:
    command: str
    checks: list[dict] = field(default_factory=list)
    witnesses: dict[str, Any] = field(default_factory=dict)
    error: str | None = None
    result: Any = None

    def add(self, name: str, expected, actual, ok: bool | None = None) -> bool:
        ok = expected == actual if ok is None else ok
        self.checks.append({"name": name, "expected": expected, "actual": actual, "ok": bool(ok)})
        return bool(ok)

    @property
    def status(self) -> str:
        if self.error is not None:
            return "error"
        return "pass" if all(c["ok"] for c in self.checks) else "fail"

    @property
    def ok(self) -> bool:
        return self.status == "pass"

    def failed(self) -> list[dict]:
        return [c for c in self.checks if not c["ok"]]

    def to_json(self) -> dict:
        out = {"command": self.command, "status": self.status, "checks": self.checks}
        if self.witnesses:
            out["witnesses"] = self.witnesses
        if self.result is not None:
            out["result"] = self.result
        if self.error is not None:
            out["error"] = self.error
        return out

    def to_text(self) -> str:
        lines = [f"{self.command}: {self.status}"]
        if self.result is not None:
            lines.append(f"  result: {self.result!r}")
        for c in self.checks:
            mark = "ok  " if c["ok"] else "FAIL"
            lines.append(f"  [{mark}] {c['name']}: expected {c['expected']!r}, got {c['actual']!r}")
        for k, v in self.witnesses.items():
            if not isinstance(v, (dict, list)) or len(json.dumps(v)) <= 200:
                lines.append(f"  {k}: {json.dumps(v, ensure_ascii=False)}")
        if self.error:
            lines.append(f"  error: {self.error}")
        return "\n".join(lines)
