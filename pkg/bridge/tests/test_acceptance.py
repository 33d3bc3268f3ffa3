"""Bridge acceptance: full round trip through the reasoning pipeline.

Drives the primary toolchain strictly through its command-line and file
interfaces: verbalize the Monument fixture to Sentences JSONL, encode with
the bridge, feed the Vectors JSONL back through import, and check the
similarity ordering plus the top-scored MCS.
"""

import json
import math
import subprocess
import sys

import pytest

from embed_bridge.cli import main as bridge_main

MONUMENT = """\
ClassAssertion(ArtifactualFeatureType Monument)
ClassAssertion(ExistingStuffType Monument)
DisjointClasses(ExistingObjectType ExistingStuffType)
SubClassOf(ArtifactualFeatureType ExistingObjectType)
"""


def _run_reasoner(*argv: str) -> str:
    result = subprocess.run(
        [sys.executable, "-m", "mcsreason.cli", *argv],
        capture_output=True, text=True)
    assert result.returncode == 0, result.stderr
    return result.stdout


def _sim_cos(u, v):
    dot = sum(a * b for a, b in zip(u, v))
    nu = math.sqrt(sum(a * a for a in u))
    nv = math.sqrt(sum(b * b for b in v))
    return 0.5 * (1.0 + dot / (nu * nv))


@pytest.fixture(scope="module")
def monument_path(tmp_path_factory):
    path = tmp_path_factory.mktemp("data") / "monument.ofn"
    path.write_text(MONUMENT, encoding="utf-8")
    return path


def test_bridge_round_trip(monument_path, tmp_path):
    sentences = tmp_path / "sentences.jsonl"
    vectors = tmp_path / "vectors.jsonl"

    sentences.write_text(
        _run_reasoner("verbalize", str(monument_path), "--mode", "sentences"),
        encoding="utf-8")
    assert len(sentences.read_text().splitlines()) == 4

    assert bridge_main(["--in", str(sentences), "--out", str(vectors)]) == 0
    records = {r["id"]: r["vector"]
               for r in map(json.loads, vectors.read_text().splitlines())}
    assert set(records) == {"a1", "a2", "a3", "a4"}

    # Shared-concept axioms score closer than the merely co-referential pair.
    assert _sim_cos(records["a1"], records["a4"]) > _sim_cos(records["a1"], records["a2"])

    # Import succeeds and the reliability scoring ranks the subset that drops
    # the disjointness outlier on top.
    scored = json.loads(_run_reasoner(
        "score", str(monument_path), "--backend", "import",
        "--vectors", str(vectors), "--metric", "cos"))
    assert scored[0]["mcs"] == ["a1", "a2", "a4"]
    assert scored[0]["score"] > scored[1]["score"]
    print("PASS: bridge round trip, similarity ordering, top MCS {a1,a2,a4}")


def test_bridge_output_is_valid_import_input(monument_path, tmp_path):
    sentences = tmp_path / "sentences.jsonl"
    vectors = tmp_path / "vectors.jsonl"
    sentences.write_text(
        _run_reasoner("verbalize", str(monument_path)), encoding="utf-8")
    assert bridge_main(["--in", str(sentences), "--out", str(vectors),
                        "--normalize"]) == 0
    # The embed stage of the reasoner accepts the file wholesale.
    out = _run_reasoner("check", str(monument_path))
    assert json.loads(out)["consistent"] is False
    scored = json.loads(_run_reasoner(
        "score", str(monument_path), "--backend", "import", "--vectors", str(vectors)))
    assert len(scored) == 4
    assert all(entry["score"] > 0 for entry in scored)
