import pytest

from src.config import (
    ConfigError, apply_parameter_defaults, get_invalid_parameters, get_missing_parameters,
    get_stage_execution_order, validate_parameter, validate_run_config,
)
from src.config.runtime_config import get_injected_fault, runtime_config
from src.config.system_config import validate_grid_spec, validate_model_spec, validate_seed
from src.tools.lab_tools import periodize_stage
from src.tools.stage_registry import stage_registry

COIN_SPEC = {"kind": "bernoulli", "alphabet": {"kind": "finite", "size": 2}, "weights": [0.5, 0.5]}


# =============================================================================
# EXPERIMENT PARAMETERS
# =============================================================================

def test_stage_batches_follow_dependencies():
    assert get_stage_execution_order("hd_collapse") == [
        ["periodize"], ["weak_distance", "measure_dims", "recurrence_rates"]]
    assert get_stage_execution_order("pd_blowup") == [["noisy_model"], ["noise_distance", "local_slopes"]]
    assert get_stage_execution_order("no_such_experiment") == []


@pytest.mark.parametrize("name, value, ok", [
    ("periods", [8, 32], True),
    ("periods", [0, 8], False),
    ("periods", [], False),
    ("periods", [True], False),
    ("trim", 0.5, False),
    ("trim", 0.0, True),
    ("model", COIN_SPEC, True),
    ("model", {"kind": "bernoulli", "alphabet": {"kind": "finite", "size": 2}, "weights": [0.9, 0.9]}, False),
    ("grid", {"eps0": 0.25, "q": 1.0, "J": 12, "s_index": 1}, False),
    ("grid", {"eps0": 0.25, "q": 0.5, "J": 12, "s_index": 1}, True),
    ("tol", 0.0, False),
])
def test_hd_collapse_parameter_validation(name, value, ok):
    assert validate_parameter(name, value, "hd_collapse") is ok


def test_eta_zero_is_allowed():
    assert validate_parameter("etas", [0.1, 0.0], "pd_blowup")
    assert not validate_parameter("etas", [1.0], "pd_blowup")
    assert not validate_parameter("wrap", "periodic", "pd_blowup")


def test_missing_and_invalid_parameters():
    assert get_missing_parameters("hd_collapse", {}) == ["model"]
    assert get_missing_parameters("pd_blowup", {"block": [0.5]}) == []
    assert get_invalid_parameters("hd_collapse", {"model": COIN_SPEC, "colour": "red"}) == ["colour"]
    assert get_invalid_parameters("hd_collapse", {"model": COIN_SPEC, "horizon": 0}) == ["horizon"]


def test_defaults_fill_only_missing_values():
    filled = apply_parameter_defaults("hd_collapse", {"model": COIN_SPEC, "periods": [4]})
    assert filled["periods"] == [4]
    assert filled["horizon"] == 4096
    assert filled["seed"] == 0
    assert filled["grid"]["eps0"] == 2.0 ** -16


def test_spec_validators():
    assert validate_model_spec({"kind": "noisy", "block": [0.1, 0.9], "eta": 0.05})
    assert not validate_model_spec("bernoulli")
    assert not validate_grid_spec({"eps0": 0.25, "J": 4})
    assert validate_seed(2 ** 64 - 1) and not validate_seed(2 ** 64) and not validate_seed(-1)


# =============================================================================
# COMMAND CONFIGS
# =============================================================================

def test_valid_run_config_passes():
    validate_run_config("estimate-dim", {"model": COIN_SPEC, "budget": 1000, "horizon": 10, "seed": 3})
    validate_run_config("pd-blowup", {"options": {"etas": [0.1, 0.0], "wrap": "clamp", "fine_scale": 0.001,
                                                  "slope_points": 3, "n_seeds": 2}})
    validate_run_config("verify", {"options": {"suite": "all"}})


@pytest.mark.parametrize("command, data", [
    ("estimate-dim", {"modle": COIN_SPEC}),
    ("estimate-dim", {"budget": 999}),
    ("recurrence", {"horizon": 0}),
    ("estimate-dim", {"tol": 1.5}),
    ("estimate-dim", {"n_points": 10}),
    ("estimate-dim", {"grid": {"eps0": 0.25, "q": 1.0, "J": 12, "s_index": 1}}),
    ("waiting", {"target_model": {"kind": "markov"}}),
    ("verify", {"options": {"suite": "metric", "colour": 1}}),
    ("verify", {"options": [1, 2]}),
    ("periodize", {"options": {"period": 2.7}}),
    ("pd-blowup", {"options": {"etas": [0.1, 1.0]}}),
    ("estimate-dim", {"options": {}}),
    ("render", {}),
])
def test_invalid_run_configs(command, data):
    with pytest.raises(ConfigError):
        validate_run_config(command, data)


# =============================================================================
# RUNTIME CONFIG
# =============================================================================

def test_runtime_config_reads_environment(monkeypatch):
    monkeypatch.setenv("SHIFTLAB_WORKERS", "3")
    monkeypatch.setenv("SHIFTLAB_LOG_LEVEL", "info")
    runtime_config.reload()
    try:
        assert runtime_config.workers == 3
        assert runtime_config.get_log_level() == 20
    finally:
        monkeypatch.delenv("SHIFTLAB_WORKERS")
        monkeypatch.delenv("SHIFTLAB_LOG_LEVEL")
        runtime_config.reload()


def test_runtime_config_ignores_bad_worker_counts(monkeypatch):
    monkeypatch.setenv("SHIFTLAB_WORKERS", "many")
    runtime_config.reload()
    assert runtime_config.workers == 1
    monkeypatch.setenv("SHIFTLAB_WORKERS", "0")
    runtime_config.reload()
    assert runtime_config.workers == 1
    monkeypatch.delenv("SHIFTLAB_WORKERS")
    runtime_config.reload()


def test_injected_fault_follows_reload(monkeypatch):
    monkeypatch.delenv("SHIFTLAB_INJECT_FAULT", raising=False)
    runtime_config.reload()
    assert get_injected_fault() is None
    monkeypatch.setenv("SHIFTLAB_INJECT_FAULT", "sandwich")
    assert get_injected_fault() is None
    runtime_config.reload()
    assert get_injected_fault() == "sandwich" == runtime_config.get_runtime_info()["injected_fault"]
    monkeypatch.delenv("SHIFTLAB_INJECT_FAULT")
    runtime_config.reload()
    assert get_injected_fault() is None


# =============================================================================
# STAGE REGISTRY
# =============================================================================

def test_stage_registry_loads_configured_functions():
    assert stage_registry.get_stage("periodize") is periodize_stage
    assert stage_registry.get_stage("no_such_stage") is None
    assert stage_registry.get_summary("pd_blowup").__name__ == "summarize_pd_blowup"
    assert "local_slopes" in stage_registry.get_all_stages()
    assert stage_registry.get_stages_for_experiment("pd_blowup") == ["noisy_model", "noise_distance", "local_slopes"]


def test_stage_arguments_come_from_parameters_outputs_and_cell():
    cell = {"cell": 0, "value": 8, "seed": 1}
    kwargs = stage_registry.build_arguments("weak_distance", {"model": COIN_SPEC, "budget": 1000, "n_seeds": 2},
                                            {"periodic_model": {"kind": "periodic"}}, cell)
    assert kwargs == {"model": COIN_SPEC, "budget": 1000, "n_seeds": 2,
                      "periodic_model": {"kind": "periodic"}, "cell": cell}
    with pytest.raises(KeyError):
        stage_registry.build_arguments("weak_distance", {}, {}, cell)
