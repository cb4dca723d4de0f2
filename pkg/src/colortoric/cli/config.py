from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from typing import Any, Dict, Optional


@dataclass
class RunConfig:
    """
    Every parameter of a CLI run. Values come from the defaults below, then a `key = value` file, then flags;
    `as_dict()` is echoed into every output.
    """
    rows: int = 3
    cols: int = 3
    gt: float = 1.0
    gc: float = 1.0
    k: int = 8
    residual_tol: Optional[float] = None
    cluster_tol: Optional[float] = None
    seed: int = 0
    workers: int = 1
    cache_dir: Optional[str] = None
    no_cache: bool = False
    format: str = "json"
    output: Optional[str] = None
    ratio_start: float = 0.5
    ratio_stop: float = 1.5
    ratio_step: float = 0.01
    chain_n: Optional[int] = None
    ed: bool = False
    gamma_start: float = 0.01
    gamma_stop: float = 0.1
    gamma_num: int = 10
    anchor: int = 0
    instance: Optional[str] = None
    verbose: bool = False

    def __post_init__(self):
        if self.format not in ("json", "csv"):
            raise ValueError(f"Unknown output format `{self.format}`.")
        assert self.k >= 1, "`k` must be positive."
        assert self.workers >= 1, "`workers` must be positive."
        assert self.ratio_step > 0 and self.ratio_stop >= self.ratio_start, "Malformed ratio grid."
        assert self.gamma_num >= 1 and self.gamma_stop >= self.gamma_start, "Malformed gamma grid."

    def as_dict(self) -> Dict[str, Any]:
        return dataclasses.asdict(self)

    def tolerances(self) -> Dict[str, Any]:
        out = {"seed": self.seed}
        if self.residual_tol is not None:
            out["residual_tol"] = self.residual_tol
        if self.cluster_tol is not None:
            out["cluster_tol"] = self.cluster_tol
        return out

    @classmethod
    def field_names(cls):
        return [f.name for f in dataclasses.fields(cls)]

    @classmethod
    def from_sources(cls, file_values: Optional[Dict[str, Any]] = None, overrides: Optional[Dict[str, Any]] = None):
        values: Dict[str, Any] = {}
        for source in (file_values, overrides):
            if source is None:
                continue
            for key, value in source.items():
                if value is not None:
                    values[key] = value

        return cls(**values)


def _convert(name: str, raw: str) -> Any:
    default = RunConfig.__dataclass_fields__[name].default
    hint = RunConfig.__dataclass_fields__[name].type
    if raw.lower() in ("none", ""):
        return None
    if isinstance(default, bool):
        if raw.lower() in ("1", "true", "yes", "on"):
            return True
        if raw.lower() in ("0", "false", "no", "off"):
            return False
        raise ValueError(f"Invalid boolean `{raw}` for `{name}`.")
    if isinstance(default, int) or "int" in str(hint):
        return int(raw)
    if isinstance(default, float) or "float" in str(hint):
        return float(raw)
    return raw


def parse_config_text(text: str) -> Dict[str, Any]:
    """
    Parse `key = value` lines; `#` starts a comment. Keys use the field names of `RunConfig` (dashes allowed).
    """
    values = {}
    for lineno, line in enumerate(text.splitlines(), start = 1):
        line = line.split("#", 1)[0].strip()
        if len(line) == 0:
            continue
        if "=" not in line:
            raise ValueError(f"Line {lineno}: expected `key = value`, got `{line}`.")

        key, _, raw = line.partition("=")
        key = key.strip().replace("-", "_")
        if key not in RunConfig.__dataclass_fields__:
            raise ValueError(f"Line {lineno}: unknown key `{key}`.")
        values[key] = _convert(key, raw.strip())

    return values


def load_config(fname: str) -> Dict[str, Any]:
    with open(fname, "r") as f:
        return parse_config_text(f.read())
