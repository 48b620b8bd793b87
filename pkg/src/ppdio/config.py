"""Run configuration: defaults, `key = value` config files, PPDIO_ env overrides."""

from __future__ import annotations

import os
from dataclasses import dataclass, field, asdict, replace
from typing import Optional

__all__ = ["RunConfig", "load_config"]

ENV_PREFIX = "PPDIO_"


@dataclass(frozen=True)
class RunConfig:
    epsilon: float = 0.01
    prec_start_bits: int = 128
    prec_max_bits: int = 16384
    sieve_segment_bits: int = 24
    seed: int = 0
    threads: Optional[int] = None  # None: all available cores
    output_format: str = "csv"  # csv | json
    output_path: Optional[str] = None

    def __post_init__(self):
        if not (0 < self.epsilon < 0.1):
            raise ValueError("epsilon must be in (0, 0.1)")
        if self.prec_start_bits < 64:
            raise ValueError("prec_start_bits must be >= 64")
        if self.output_format not in ("csv", "json"):
            raise ValueError("output_format must be csv or json")

    def snapshot(self) -> dict:
        return asdict(self)


_FIELD_TYPES = {
    "epsilon": float,
    "prec_start_bits": int,
    "prec_max_bits": int,
    "sieve_segment_bits": int,
    "seed": int,
    "threads": int,
    "output_format": str,
    "output_path": str,
}


def _parse_kv(text: str) -> dict:
    out = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"config line {lineno}: expected 'key = value'")
        key, value = (s.strip() for s in line.split("=", 1))
        if key not in _FIELD_TYPES:
            raise ValueError(f"config line {lineno}: unknown key {key!r}")
        out[key] = _FIELD_TYPES[key](value)
    return out


def load_config(path: Optional[str] = None, overrides: Optional[dict] = None) -> RunConfig:
    """Defaults, then config file, then PPDIO_* environment, then overrides."""
    values: dict = {}
    if path:
        with open(path) as fh:
            values.update(_parse_kv(fh.read()))
    for key, typ in _FIELD_TYPES.items():
        env = os.environ.get(ENV_PREFIX + key.upper())
        if env is not None:
            values[key] = typ(env)
    if overrides:
        values.update({k: v for k, v in overrides.items() if v is not None})
    return RunConfig(**values)
