"""
Result models shared by checks and the command-line application.

Reports are pydantic models so that every command emits JSON with a stable,
versioned shape.
"""

import hashlib
import json
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field

SCHEMA_VERSION = 'cliquesparse/1'


class ClauseResult(BaseModel):
    """Outcome of one checked clause over all instances it was evaluated on."""
    name: str
    passed: bool = True
    checked: int = 0
    counterexample: Optional[Dict[str, Any]] = None


class CheckReport(BaseModel):
    """
    Pass/fail record of a multi-clause check.

    Clauses are accumulated with record(); the first failure of a clause keeps
    its counterexample. Findings are informational and never fail a check.
    """
    check: str
    passed: bool = True
    clauses: List[ClauseResult] = Field(default_factory=list)
    findings: List[str] = Field(default_factory=list)
    data: Dict[str, Any] = Field(default_factory=dict)

    def clause(self, name: str) -> ClauseResult:
        """Get or create the clause with the given name."""
        for existing in self.clauses:
            if existing.name == name:
                return existing
        created = ClauseResult(name=name)
        self.clauses.append(created)
        return created

    def record(self, name: str, ok: bool, counterexample: Optional[Dict[str, Any]] = None) -> bool:
        """
        Record one evaluation of a clause.

        Args:
            name: Clause name
            ok: Whether the clause held on this instance
            counterexample: Instance data kept if this is the clause's first failure

        Returns:
            ok, for chaining in conditions
        """
        result = self.clause(name)
        result.checked += 1
        if not ok:
            if result.passed:
                result.counterexample = counterexample
            result.passed = False
            self.passed = False
        return ok

    def add_finding(self, text: str) -> None:
        if text not in self.findings:
            self.findings.append(text)

    def merge(self, other: 'CheckReport') -> None:
        """Fold another report's clauses and findings into this one."""
        for incoming in other.clauses:
            result = self.clause(incoming.name)
            result.checked += incoming.checked
            if not incoming.passed and result.passed:
                result.passed = False
                result.counterexample = incoming.counterexample
        for finding in other.findings:
            self.add_finding(finding)
        self.passed = self.passed and other.passed

    def failed_clauses(self) -> List[str]:
        return [c.name for c in self.clauses if not c.passed]


class Report(BaseModel):
    """Top-level JSON document printed by every command."""
    model_config = ConfigDict(populate_by_name=True)

    schema_version: str = Field(default=SCHEMA_VERSION, serialization_alias='schema')
    command: str
    input_digest: Optional[str] = None
    version: str
    seed: Optional[int] = None
    results: Dict[str, Any] = Field(default_factory=dict)

    def to_json(self, pretty: bool = False) -> str:
        """Serialize with sorted keys so identical runs give identical bytes."""
        payload = self.model_dump(mode='json', by_alias=True)
        if pretty:
            return json.dumps(payload, sort_keys=True, indent=2)
        return json.dumps(payload, sort_keys=True, separators=(',', ':'))


def digest(raw: bytes) -> str:
    """sha256 hex digest of raw input bytes."""
    return hashlib.sha256(raw).hexdigest()
