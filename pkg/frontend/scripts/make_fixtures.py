"""Record real service responses for the frontend test suite.

Replays the exact request sequence the tests issue and stores every raw
response body keyed by method, path, and canonical request body, so vitest
runs against byte-identical backend payloads without a live server.
"""

import json
from pathlib import Path

from fastapi.testclient import TestClient

from hypersem.oracle import make_generator
from hypersem.pipeline import ground_truth_boundaries
from hypersem.server import create_app
from hypersem.store import BoundaryStore

OUT = Path(__file__).resolve().parent.parent / "tests" / "fixtures" / "service_fixtures.json"


def _js_numbers(value):
    # JS JSON.stringify writes integral floats without the trailing ".0"
    if isinstance(value, float) and value.is_integer():
        return int(value)
    if isinstance(value, dict):
        return {k: _js_numbers(v) for k, v in value.items()}
    if isinstance(value, list):
        return [_js_numbers(v) for v in value]
    return value


def key(method, path, body=None):
    canonical = (
        "" if body is None
        else json.dumps(_js_numbers(body), sort_keys=True, separators=(",", ":"))
    )
    return f"{method} {path} {canonical}"


def main():
    import tempfile

    gen = make_generator(d=64, seed=0, noise_sigma=0.1)
    with tempfile.TemporaryDirectory() as tmp:
        store = BoundaryStore(tmp)
        bs = ground_truth_boundaries(gen)
        for name in bs.names():
            store.save(bs.direction(name))
        client = TestClient(create_app(gen, store))

        fixtures = {}

        def record(method, path, body=None):
            if method == "GET":
                resp = client.get(path)
            else:
                resp = client.post(path, json=body)
            assert resp.status_code == 200, (path, resp.status_code, resp.text)
            fixtures[key(method, path, body)] = resp.text
            return resp.json()

        record("GET", "/api/generator")
        record("POST", "/api/sample", {"seed": 7})
        record("POST", "/api/edit", {"attribute": "age", "alpha": 3.0, "conditions": ["gender"]})
        record("POST", "/api/edit", {"attribute": "age", "alpha": -3.0, "conditions": ["gender"]})
        record("POST", "/api/edit", {"attribute": "pose", "alpha": 1.5, "conditions": []})
        record("POST", "/api/edit", {"attribute": "pose", "alpha": -1.5, "conditions": []})

    OUT.parent.mkdir(parents=True, exist_ok=True)
    OUT.write_text(json.dumps(fixtures, indent=1))
    print(f"wrote {len(fixtures)} fixtures to {OUT}")


if __name__ == "__main__":
    main()
