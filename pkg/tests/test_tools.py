import asyncio
import json

import pytest

from syk_nmr_sim import resources
from syk_nmr_sim.tools import RUNNERS, TOOL_REGISTRY, call_tool, get_all_tools, readers
from syk_nmr_sim.tools.common import RUN_PROPERTIES


def _text(result):
    assert len(result) == 1
    return result[0].text


@pytest.fixture
def stored_run(tmp_path, run_repo, monkeypatch):
    monkeypatch.setattr(readers, "run_repo", run_repo)
    monkeypatch.setattr(resources, "run_repo", run_repo)
    text = _text(asyncio.run(call_tool("run_couplings", {
        "out_dir": str(run_repo.root), "seed": 2, "params": {"N": 6, "samples": 1},
    })))
    assert "complete" in text
    (run_id,) = run_repo.list_runs()
    return run_id


def test_every_pipeline_is_a_tool():
    names = [tool.name for tool in get_all_tools()]
    assert names == [name for name, _, _ in TOOL_REGISTRY]
    assert {f"run_{command.replace('-', '_')}" for command in RUNNERS} <= set(names)
    for tool in get_all_tools():
        if tool.name.startswith("run_"):
            assert tool.inputSchema["properties"] == RUN_PROPERTIES


def test_unknown_tool():
    with pytest.raises(ValueError):
        asyncio.run(call_tool("roll_dice", {}))


def test_pipeline_errors_come_back_as_text(tmp_path):
    text = _text(asyncio.run(call_tool("run_couplings", {"out_dir": str(tmp_path), "params": {"samples_": 1}})))
    assert text.startswith("Error running couplings:")
    assert "samples_" in text


def test_list_and_get_run(stored_run):
    listing = _text(asyncio.run(call_tool("list_runs", {})))
    assert f"- {stored_run} (couplings)" in listing
    manifest = json.loads(_text(asyncio.run(call_tool("get_run", {"run_id": stored_run}))))
    assert manifest["master_seed"] == 2
    assert "pauli-terms-00.csv" in manifest["files"]


def test_reader_errors(tmp_path, run_repo, monkeypatch):
    monkeypatch.setattr(readers, "run_repo", run_repo)
    assert "No runs found" in _text(asyncio.run(call_tool("list_runs", {})))
    assert _text(asyncio.run(call_tool("get_run", {}))) == "run_id is required."
    assert "not found" in _text(asyncio.run(call_tool("get_run", {"run_id": "grape-000000000000"})))


def test_resources_expose_run_files(stored_run):
    listed = asyncio.run(resources.list_resources())
    uris = {str(r.uri).rstrip("/") for r in listed}
    assert "runs://list" in uris
    assert f"runs://{stored_run}/manifest.json" in uris
    assert f"runs://{stored_run}/couplings-00.csv" in uris

    runs = json.loads(asyncio.run(resources.read_resource("runs://list")))
    assert runs == [{"id": stored_run, "command": "couplings"}]
    files = json.loads(asyncio.run(resources.read_resource(f"runs://{stored_run}/")))["files"]
    assert "couplings-00.json" in files
    content = asyncio.run(resources.read_resource(f"runs://{stored_run}/pauli-terms-00.csv"))
    assert content.startswith("index,support,weight,coefficient\n")


def test_resource_errors(stored_run):
    assert "error" in json.loads(asyncio.run(resources.read_resource("runs://nope/")))
    assert "error" in json.loads(asyncio.run(resources.read_resource(f"runs://{stored_run}/missing.csv")))
    assert "error" in json.loads(asyncio.run(resources.read_resource("files://x")))


def test_resource_templates_cover_run_files():
    templates = {t.uriTemplate for t in resources.list_resource_templates()}
    assert templates == {"runs://{run_id}/", "runs://{run_id}/{file}"}
