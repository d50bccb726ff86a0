"""Serializable inputs and results of the verification suites."""
from typing import Dict, List, Optional

from pydantic import BaseModel, Field

from ..config import DEFAULT_CONFIG


def _bound(name):
    return DEFAULT_CONFIG['bounds'][name]


class SuiteBounds(BaseModel):
    qmax: int = _bound('qmax')
    identity_qmax: int = _bound('identity_qmax')
    oracle_qmax: int = _bound('oracle_qmax')
    midpoint_qmax: int = _bound('midpoint_qmax')
    recurrence_qmax: int = _bound('recurrence_qmax')
    recurrence_nmax: int = _bound('recurrence_nmax')
    nmax: int = _bound('nmax')
    corpus_size: int = _bound('corpus_size')
    search_cap: int = _bound('search_cap')
    t_cap: int = _bound('t_cap')
    shift_t: int = _bound('shift_t')
    digits: int = DEFAULT_CONFIG['digits']
    tolerance: str = DEFAULT_CONFIG['tolerances']['limit_relative']
    audit: bool = DEFAULT_CONFIG['audit']
    workers: int = DEFAULT_CONFIG['workers']
    max_violations: int = 50
    tail_slopes: List[str] = Field(default_factory=lambda: list(DEFAULT_CONFIG['slopes']['tail']))
    increasing_slopes: List[str] = Field(default_factory=lambda: list(DEFAULT_CONFIG['slopes']['increasing']))
    decreasing_slopes: List[str] = Field(default_factory=lambda: list(DEFAULT_CONFIG['slopes']['decreasing']))
    mixed_slopes: List[str] = Field(default_factory=lambda: list(DEFAULT_CONFIG['slopes']['mixed']))

    @classmethod
    def from_config(cls, config: dict, **overrides) -> 'SuiteBounds':
        values = dict(config.get('bounds', {}))
        values['digits'] = config.get('digits', DEFAULT_CONFIG['digits'])
        values['audit'] = config.get('audit', DEFAULT_CONFIG['audit'])
        values['workers'] = config.get('workers', DEFAULT_CONFIG['workers'])
        tolerances = config.get('tolerances', {})
        if 'limit_relative' in tolerances:
            values['tolerance'] = str(tolerances['limit_relative'])
        for family, slopes in config.get('slopes', {}).items():
            values[f'{family}_slopes'] = [str(s) for s in slopes]
        values.update({key: value for key, value in overrides.items() if value is not None})
        return cls(**values)

    def parameters(self) -> Dict[str, str]:
        """Bounds as strings, without the worker count (results do not depend on it)."""
        dumped = self.model_dump(exclude={'workers'})
        return {key: str(value) for key, value in dumped.items()}


class Violation(BaseModel):
    claim: str
    witness: Dict[str, str]
    lhs: str
    rhs: str
    note: Optional[str] = None


class AuditFinding(BaseModel):
    """A statement checked in its printed (uncorrected) form."""
    claim: str
    statement: str
    status: str = 'not-refuted'
    witness: Optional[Dict[str, str]] = None
    lhs: Optional[str] = None
    rhs: Optional[str] = None


class ViolationReport(BaseModel):
    suite: str
    claims: List[str]
    parameters: Dict[str, str]
    violations: List[Violation] = Field(default_factory=list)
    violation_count: int = 0
    audit: List[AuditFinding] = Field(default_factory=list)
    measurements: Dict[str, str] = Field(default_factory=dict)
    checks: int = 0
    elapsed_seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return self.violation_count == 0

    def payload(self, include_timing: bool = False) -> dict:
        exclude = None if include_timing else {'elapsed_seconds'}
        return self.model_dump(mode='json', exclude=exclude)
