import json

import pytest

from syk_nmr_sim.config import COMMAND_DEFAULTS, RunConfig, config_from_arguments, load_run_config, read_config_file
from syk_nmr_sim.utils import ConfigError


def test_defaults_per_command():
    for command in COMMAND_DEFAULTS:
        config = load_run_config(command)
        assert config.params == COMMAND_DEFAULTS[command]
        assert config.master_seed == 0
        assert config.engine == "exact"


def test_file_then_overrides(tmp_path):
    path = tmp_path / "config.json"
    path.write_text(json.dumps({"master_seed": 4, "params": {"samples": 3, "tau": {"points": 12}}}))
    config = load_run_config("correlation", path, {"master_seed": 9, "params": {"samples": 5}})
    assert config.master_seed == 9
    assert config.params["samples"] == 5
    assert config.params["tau"] == {"ln_min": -3.0, "ln_max": 3.0, "points": 12}
    assert COMMAND_DEFAULTS["correlation"]["tau"]["points"] == 30


@pytest.mark.parametrize("layer", [
    {"params": {"sampels": 3}},
    {"params": {"tau": {"pts": 3}}},
    {"color": "red"},
    {"command": "scaling"},
    {"engine": "rk4"},
    {"threads": 0},
])
def test_bad_config_layers(layer):
    with pytest.raises(ConfigError) as excinfo:
        load_run_config("correlation", overrides=layer)
    assert excinfo.value.exit_code == 2


def test_unknown_command():
    with pytest.raises(ConfigError):
        load_run_config("simulate")


def test_config_file_errors(tmp_path):
    with pytest.raises(ConfigError):
        read_config_file(tmp_path / "missing.json")
    broken = tmp_path / "broken.json"
    broken.write_text("{not json")
    with pytest.raises(ConfigError):
        read_config_file(broken)


def test_manifest_is_read_as_config(tmp_path):
    config = load_run_config("couplings", overrides={"master_seed": 3, "out_dir": str(tmp_path / "a")})
    manifest = {"command": "couplings", "config": config.to_json(), "config_hash": config.content_hash()}
    path = tmp_path / "manifest.json"
    path.write_text(json.dumps(manifest))
    again = load_run_config("couplings", path, {"out_dir": str(tmp_path / "b")})
    assert again.content_hash() == config.content_hash()
    assert again.run_name == config.run_name


def test_run_name_ignores_output_location_and_threads():
    a = RunConfig("couplings", dict(COMMAND_DEFAULTS["couplings"]), out_dir="/tmp/a", threads=1)
    b = RunConfig("couplings", dict(COMMAND_DEFAULTS["couplings"]), out_dir="/tmp/b", threads=8)
    c = RunConfig("couplings", dict(COMMAND_DEFAULTS["couplings"]), master_seed=1)
    assert a.run_name == b.run_name
    assert a.run_name != c.run_name
    assert a.run_name.startswith("couplings-")
    assert len(a.run_name) == len("couplings-") + 12


def test_config_from_tool_arguments():
    config = config_from_arguments("scaling", {"seed": 2, "threads": 3, "params": {"N_list": [4, 6]}})
    assert config.master_seed == 2
    assert config.threads == 3
    assert config.params["N_list"] == [4, 6]
    assert config.trotter_steps is None


def test_rejections_list_accepted_values():
    with pytest.raises(ConfigError, match=r"^Unknown engine 'fast'\. Use 'exact' or 'trotter'\.$"):
        load_run_config("correlation", overrides={"engine": "fast"})
    with pytest.raises(ConfigError, match=r"^Command 'simulate' not found\. Use one of \["):
        load_run_config("simulate")
