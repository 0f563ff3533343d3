from mcp.types import Tool, TextContent

from syk_nmr_sim.config import RunConfig
from syk_nmr_sim.observables import (
    EvolutionMode,
    averaged_correlation,
    log_tau_grid,
    saturation_stderr,
    saturation_value,
)
from syk_nmr_sim.syk_model import draw_samples
from syk_nmr_sim.tools.common import RUN_PROPERTIES, RunOutcome, handle_run, model_params, start_run

SAMPLE_HEADER = ("sample_seed", "beta", "mu", "tau", "re_D", "im_D", "abs_D_normalized")
AGGREGATE_HEADER = ("beta", "mu", "tau", "avg_abs_D", "stderr")


def evolution_mode(config: RunConfig) -> EvolutionMode:
    """Engine selection: exact, or Trotter with fixed steps or a maximum step length."""
    if config.engine == "exact":
        return EvolutionMode.exact()
    if config.trotter_steps is not None:
        return EvolutionMode.trotter(steps=config.trotter_steps)
    return EvolutionMode.trotter(max_step=float(config.params["trotter_max_step"]))


def tau_grid(params: dict) -> tuple[float, ...]:
    """Log grid with tau = 0 in front, so every curve starts at exactly 1."""
    axis = params["tau"]
    return (0.0,) + log_tau_grid(axis["ln_min"], axis["ln_max"], int(axis["points"]))


def get_correlation_tool() -> Tool:
    """Return the run_correlation tool definition."""
    return Tool(
        name="run_correlation",
        description="Sample-averaged normalized boson correlation |D(tau)/D(0)| over a (beta, mu) grid.",
        inputSchema={"type": "object", "properties": RUN_PROPERTIES},
    )


def run_correlation(config: RunConfig) -> RunOutcome:
    p = config.params
    grid = tau_grid(p)
    mode = evolution_mode(config)
    sample_rows, aggregate_rows, saturation = [], [], []
    for beta in p["betas"]:
        for mu in p["mus"]:
            samples = draw_samples(model_params(p, mu=mu), config.master_seed, int(p["samples"]), p["pairing"])
            series = averaged_correlation(samples, float(beta), grid, mode, config.threads)
            sample_rows.extend(series.sample_rows())
            aggregate_rows.extend(series.aggregate_rows())
            saturation.append({
                "beta": float(beta),
                "mu": float(mu),
                "avg_abs_D_inf": saturation_value(series, p["window"]),
                "stderr": saturation_stderr(series, p["window"]),
            })

    run = start_run(config)
    run.write_csv("correlation-samples.csv", SAMPLE_HEADER, sample_rows)
    run.write_csv("correlation-aggregate.csv", AGGREGATE_HEADER, aggregate_rows)
    run.notes["engine"] = mode.describe()
    run.notes["saturation"] = saturation
    return run.finish()


async def handle_correlation(arguments: dict) -> list[TextContent]:
    """Handle the run_correlation tool call."""
    return await handle_run("correlation", arguments, run_correlation)
