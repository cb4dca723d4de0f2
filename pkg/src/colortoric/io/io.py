from __future__ import annotations

import json
import logging
import os
from pathlib import Path
from typing import Any, Dict, Optional

import colortoric
from colortoric.lattice import HexTorus
from .serialization import serialize_instance, deserialize_instance, request_hash

logger = logging.getLogger(__name__)

CACHE_ENV = "COLORTORIC_CACHE_DIR"


def save(fname: str, obj: Any):
    """
    Save a torus (`.cti`, plain-text instance) or a report dictionary (`.json`).

    :param fname: file name
    :type fname: str
    """
    if fname.endswith(".cti"):
        assert isinstance(obj, HexTorus), "Only tori can be saved as `.cti` instances."
        with open(fname, "w") as f:
            f.write(serialize_instance(obj))
    elif fname.endswith(".json"):
        with open(fname, "w") as f:
            f.write(dumps_report(obj))
    else:
        raise ValueError(f"Unknown file type `.{fname.split('.')[-1]}`.")


def load(fname: str):
    """
    Load a torus from a `.cti` file or a report from a `.json` file.
    """
    if fname.endswith(".cti"):
        with open(fname, "r") as f:
            return deserialize_instance(f.read())
    elif fname.endswith(".json"):
        with open(fname, "r") as f:
            return json.load(f)
    else:
        raise ValueError(f"Unknown file type `.{fname.split('.')[-1]}`.")


def dumps_report(payload: Dict[str, Any]) -> str:
    return json.dumps(payload, sort_keys = True, indent = 2, default = _json_default) + "\n"


def _json_default(obj):
    if hasattr(obj, "to_dict"):
        return obj.to_dict()
    if hasattr(obj, "tolist"):
        return obj.tolist()
    if hasattr(obj, "item"):
        return obj.item()
    raise TypeError(f"Object of type `{type(obj).__name__}` is not serializable.")


def wrap_report(result: Any, config: Dict[str, Any], instance_hash: Optional[str] = None) -> Dict[str, Any]:
    """
    Attach provenance (tool version, configuration echo, instance hash) to a result.
    """
    return {
        "version": colortoric.__version__,
        "config": config,
        "instance_hash": instance_hash,
        "result": result.to_dict() if hasattr(result, "to_dict") else result
    }


def resolve_cache_dir(cache_dir: Optional[str] = None) -> Path:
    if cache_dir is None:
        cache_dir = os.environ.get(CACHE_ENV, None)
    if cache_dir is None:
        cache_dir = os.path.join(os.path.expanduser("~"), ".cache", "colortoric")

    return Path(cache_dir)


class ResultCache(object):
    """
    On-disk JSON results keyed by the SHA-256 of the canonical request.

    :param cache_dir: directory; falls back to `$COLORTORIC_CACHE_DIR`, then `~/.cache/colortoric`
    :type cache_dir: Optional[str]

    :param enabled: a disabled cache never reads or writes
    :type enabled: bool
    """

    def __init__(self, cache_dir: Optional[str] = None, enabled: bool = True):
        self.directory = resolve_cache_dir(cache_dir)
        self.enabled = enabled

    def key(self, request: Dict[str, Any]) -> str:
        return request_hash(request)

    def _path(self, key: str) -> Path:
        return self.directory / f"{key}.json"

    def get(self, request: Dict[str, Any]) -> Optional[Dict[str, Any]]:
        if not self.enabled:
            return None

        path = self._path(self.key(request))
        if not path.exists():
            logger.info(f"Cache miss for {path.name}.")
            return None

        logger.info(f"Cache hit for {path.name}.")
        with open(path, "r") as f:
            return json.load(f)

    def put(self, request: Dict[str, Any], result: Dict[str, Any]):
        if not self.enabled:
            return

        self.directory.mkdir(parents = True, exist_ok = True)
        path = self._path(self.key(request))
        tmp = path.with_suffix(".tmp")
        with open(tmp, "w") as f:
            f.write(dumps_report(result))
        os.replace(tmp, path)
