"""Regenerate tests/fixtures/recordings.json from the live fixture backend.

Run from the repository root after changing the service or the fixture
corpus, so the frontend tests keep asserting against real responses:

    python3 frontend/scripts/record_fixtures.py
"""

import json
import sys
from pathlib import Path

REPO = Path(__file__).resolve().parents[2]
sys.path.insert(0, str(REPO / "tests"))

from fastapi.testclient import TestClient

from outbreakcorpus.indexing import build_index
from outbreakcorpus.service import SnapshotHolder, create_app

from fixture_corpus import fixture_docs

# Every request the UI tests replay: (path, query params).
REQUESTS = [
    ("/search", {"q": "plague"}),
    ("/search", {"q": "plague zone:causes"}),
    ("/search", {"q": "plague~9"}),
    ("/documents/rpt-hongkong-1894", {}),
    ("/documents/rpt-hongkong-1894/search", {"q": "plague"}),
    ("/documents/rpt-hongkong-1894/search", {"q": "plague OR bacilli OR soil"}),
    ("/documents/rpt-bombay-1897", {}),
    ("/documents/rpt-bombay-1897/search", {"q": "plague"}),
    ("/documents/rpt-nowhere-0000", {}),
]


def main():
    client = TestClient(create_app(SnapshotHolder(build_index(fixture_docs()))))
    recordings = []
    for path, params in REQUESTS:
        response = client.get(path, params=params)
        recordings.append({
            "path": path,
            "params": params,
            "status": response.status_code,
            "body": response.json(),
        })
    out = REPO / "frontend" / "tests" / "fixtures" / "recordings.json"
    out.write_text(json.dumps(recordings, indent=2, sort_keys=True) + "\n")
    print(f"wrote {len(recordings)} recordings to {out}")


if __name__ == "__main__":
    main()
