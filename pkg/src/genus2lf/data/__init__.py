"""Bundled, verifier-stamped input files.

Each file is accepted only if its digest stamp matches and the engine
re-verifies its content on load.
"""

from __future__ import annotations

import json
from importlib import resources
from pathlib import Path
from typing import Optional, Union

from ..factorization import (
    FactorizationError,
    LanternConfig,
    PositiveFactorization,
    stamp_matches,
    verify,
)
from ..mcg import Verdict

SEED_FILE = "seed_4_3.json"
LANTERN_FILE = "lantern.json"
MATSUMOTO_FILE = "matsumoto_6_2.json"


def data_path(name: str) -> Path:
    return Path(str(resources.files(__package__).joinpath(name)))


def _load(path: Union[str, Path]) -> dict:
    data = json.loads(Path(path).read_text())
    if not isinstance(data, dict):
        raise ValueError(f"{path}: expected a JSON object")
    if not stamp_matches(data):
        raise FactorizationError("stamp", f"{path}: verified_by stamp missing or stale")
    return data


def load_lantern(path: Optional[Union[str, Path]] = None) -> LanternConfig:
    path = path or data_path(LANTERN_FILE)
    cfg = LanternConfig.from_json(_load(path))
    if not cfg.check().ok:
        raise FactorizationError("lantern", f"{path}: lantern config fails its checks")
    return cfg


def load_factorization(path: Union[str, Path]) -> PositiveFactorization:
    pf = PositiveFactorization.from_json(_load(path))
    if verify(pf).verdict is not Verdict.IDENTITY:
        raise FactorizationError("unverified", f"{path}: factorization does not verify")
    return pf


def load_seed(path: Optional[Union[str, Path]] = None) -> PositiveFactorization:
    return load_factorization(path or data_path(SEED_FILE))


def load_matsumoto(path: Optional[Union[str, Path]] = None) -> PositiveFactorization:
    return load_factorization(path or data_path(MATSUMOTO_FILE))
