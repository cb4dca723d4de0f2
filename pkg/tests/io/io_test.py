import colortoric
import json
import os
import tempfile
import numpy as np

from colortoric.errors import SizeMismatch
from colortoric.lattice import make_torus, wilson_rectangle, validate
from colortoric.io import load, save, serialize_instance, deserialize_instance, instance_hash, request_hash
from colortoric.io import dumps_report, wrap_report, resolve_cache_dir, ResultCache, CACHE_ENV

import pytest


def test_instance_io():
    t = make_torus(3, 3)
    t.loops["wilson"] = wilson_rectangle(t, 1, 2)

    temp_file = tempfile.NamedTemporaryFile(suffix = '.cti')
    temp_file_name = temp_file.name
    save(temp_file_name, t)

    t_dup = load(temp_file_name)

    assert t_dup.dims == t.dims
    assert t_dup.colors == t.colors
    assert t_dup.split == t.split
    assert [trap.qubits for trap in t_dup.trapezoids] == [trap.qubits for trap in t.trapezoids]
    assert [trap.shade for trap in t_dup.trapezoids] == [trap.shade for trap in t.trapezoids]
    assert [r.sites for r in t_dup.light_rings] == [r.sites for r in t.light_rings]
    assert [r.bonds for r in t_dup.dark_rings] == [r.bonds for r in t.dark_rings]
    assert sorted(t_dup.loops) == sorted(t.loops)
    for name, loop in t.loops.items():
        assert t_dup.loops[name].operator() == loop.operator()
    assert t_dup.loops["wilson"].metadata["enclosed"] == t.loops["wilson"].metadata["enclosed"]

    assert validate(t_dup).admissible
    assert instance_hash(t_dup) == instance_hash(t)


def test_instance_hash():
    a, b = make_torus(3, 3), make_torus(3, 3)
    assert instance_hash(a) == instance_hash(b)
    assert len(instance_hash(a)) == 64

    text = serialize_instance(a)
    assert text.startswith("colortoric-instance 1\n")


def test_corrupted_instance():
    text = serialize_instance(make_torus(3, 3))

    lines = text.splitlines()
    for i, line in enumerate(lines):
        if line.startswith("hexagon 0:"):
            color, qubits = line.split("|")
            values = qubits.split()
            lines[i] = f"{color}| {' '.join(values[::-1])}"
    with pytest.raises(SizeMismatch):
        deserialize_instance("\n".join(lines))

    with pytest.raises(ValueError):
        deserialize_instance("not-an-instance 1\nn_rows: 3\n")


def test_reports():
    assert request_hash({"a": 1, "b": [1, 2]}) == request_hash({"b": [1, 2], "a": 1})
    assert request_hash({"a": 1}) != request_hash({"a": 2})

    payload = wrap_report({"values": np.arange(3), "x": np.float64(0.5)}, {"k": 8}, "abc")
    text = dumps_report(payload)
    d = json.loads(text)
    assert d["version"] == colortoric.__version__
    assert d["config"] == {"k": 8}
    assert d["instance_hash"] == "abc"
    assert d["result"] == {"values": [0, 1, 2], "x": 0.5}

    temp_file = tempfile.NamedTemporaryFile(suffix = '.json')
    save(temp_file.name, payload)
    assert load(temp_file.name)["result"]["values"] == [0, 1, 2]

    with pytest.raises(ValueError):
        save("result.txt", payload)


def test_result_cache():
    with tempfile.TemporaryDirectory() as tmp:
        cache = ResultCache(tmp)
        request = {"command": "spectrum", "k": 4}
        assert cache.get(request) is None

        cache.put(request, {"eigenvalues": [-1.0, 0.0]})
        assert cache.get(request) == {"eigenvalues": [-1.0, 0.0]}
        assert cache.get({"command": "spectrum", "k": 5}) is None

        disabled = ResultCache(tmp, enabled = False)
        assert disabled.get(request) is None


def test_cache_dir(monkeypatch):
    monkeypatch.setenv(CACHE_ENV, "/tmp/colortoric-cache-test")
    assert str(resolve_cache_dir()) == "/tmp/colortoric-cache-test"
    assert str(resolve_cache_dir("/elsewhere")) == "/elsewhere"

    monkeypatch.delenv(CACHE_ENV)
    assert resolve_cache_dir().parts[-2:] == (".cache", "colortoric")


if __name__ == "__main__":
    test_instance_io()
    test_instance_hash()
    test_corrupted_instance()
    test_reports()
    test_result_cache()
