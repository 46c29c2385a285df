import json
from dataclasses import dataclass, asdict, fields
from typing import Optional

import pandas as pd


class _Report():
    '''
    JSON / table serialization shared by the report types; keys are the dataclass field names.
    '''
    def to_dict(self):
        return asdict(self)

    def to_json(self):
        return json.dumps(self.to_dict())

    @classmethod
    def keys(cls):
        return [f.name for f in fields(cls)]


@dataclass(frozen=True)
class RunReport(_Report):
    protocol: str
    parameters: dict
    hidden_s: int
    recovered_s: int
    queries_used: int
    query_budget: int
    success_probability: float
    branch_taken: str
    seed: Optional[int] = None

    @property
    def exact(self):
        return abs(self.success_probability - 1) <= 1e-9

    @property
    def within_budget(self):
        return self.queries_used <= self.query_budget


@dataclass(frozen=True)
class BoundsReport(_Report):
    n: int
    k: int
    eps: float
    bound_log3: float
    bound_nk: float
    bound_log2: float
    quantum_upper: int
    min_depth: int


@dataclass(frozen=True)
class SlsBoundsReport(_Report):
    q: int
    eps: float
    bound_stated: float
    bound_proof: float
    classical_upper: int
    quantum_upper: int
    min_depth: int


def reports_to_frame(reports):
    '''
    One row per report; nested parameter dicts are stored as JSON strings
    '''
    rows = []
    for report in reports:
        row = report.to_dict()
        if('parameters' in row):
            row['parameters'] = json.dumps(row['parameters'], sort_keys=True)
        rows.append(row)
    return pd.DataFrame(rows, columns=type(reports[0]).keys() if len(reports) > 0 else None)
