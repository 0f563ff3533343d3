from mcp.types import Tool, TextContent

from syk_nmr_sim.config import RunConfig
from syk_nmr_sim.observables import scaling_sweep
from syk_nmr_sim.tools.common import RUN_PROPERTIES, RunOutcome, handle_run, model_params, start_run
from syk_nmr_sim.tools.correlation import evolution_mode, tau_grid


def get_scaling_tool() -> Tool:
    """Return the run_scaling tool definition."""
    return Tool(
        name="run_scaling",
        description="Finite-size scaling of the late-time boson correlation avg|D(inf)| over N and mu.",
        inputSchema={"type": "object", "properties": RUN_PROPERTIES},
    )


def run_scaling(config: RunConfig) -> RunOutcome:
    p = config.params
    points = scaling_sweep(
        p["N_list"],
        p["mus"],
        float(p["beta"]),
        int(p["samples"]),
        master_seed=config.master_seed,
        base=model_params(p, n_majorana=min(p["N_list"])),
        tau_grid=tau_grid(p),
        window=p["window"],
        evolution_mode=evolution_mode(config),
        pairing=p["pairing"],
        threads=config.threads,
    )
    run = start_run(config)
    run.write_csv("scaling.csv", ("N", "mu", "avg_abs_D_inf", "stderr", "samples"), (pt.to_row() for pt in points))
    return run.finish()


async def handle_scaling(arguments: dict) -> list[TextContent]:
    """Handle the run_scaling tool call."""
    return await handle_run("scaling", arguments, run_scaling)
