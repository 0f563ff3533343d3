import numpy as np
from mcp.types import Tool, TextContent

from syk_nmr_sim.config import RunConfig
from syk_nmr_sim.evolution import ANCHOR_LN_TAU, ANCHOR_LOG10_N, anchor_steps, fidelity_surface
from syk_nmr_sim.syk_model import build_hamiltonian, generate_couplings, sample_params
from syk_nmr_sim.tools.common import RUN_PROPERTIES, RunOutcome, handle_run, model_params, start_run


def _axis(axis: dict, extra: float | None) -> list[float]:
    values = np.linspace(axis["min"], axis["max"], int(axis["points"])).tolist()
    if extra is not None and not any(abs(v - extra) < 1e-12 for v in values):
        values.append(extra)
    return sorted(values)


def get_fidelity_surface_tool() -> Tool:
    """Return the run_fidelity_surface tool definition."""
    return Tool(
        name="run_fidelity_surface",
        description="Fidelity between exact and Trotterized evolution of one SYK sample over a (ln tau, log10 n) grid.",
        inputSchema={"type": "object", "properties": RUN_PROPERTIES},
    )


def run_fidelity_surface(config: RunConfig) -> RunOutcome:
    p = config.params
    couplings = generate_couplings(sample_params(model_params(p), config.master_seed, int(p["sample_index"])))
    h = build_hamiltonian(couplings)
    anchor = p["include_anchor"]
    grid = fidelity_surface(
        h,
        _axis(p["ln_tau"], ANCHOR_LN_TAU if anchor else None),
        _axis(p["log10_n"], ANCHOR_LOG10_N if anchor else None),
        threads=config.threads,
    )

    run = start_run(config)
    run.write_csv("fidelity_surface.csv", ("ln_tau", "log10_n", "fidelity"), grid.rows())
    run.notes["terms"] = len(h)
    run.notes["sample_seed"] = couplings.params.seed
    if anchor:
        run.notes["anchor_fidelity"] = grid.value_at(ANCHOR_LN_TAU, ANCHOR_LOG10_N)
        run.notes["anchor_steps"] = anchor_steps(ANCHOR_LOG10_N)
    return run.finish()


async def handle_fidelity_surface(arguments: dict) -> list[TextContent]:
    """Handle the run_fidelity_surface tool call."""
    return await handle_run("fidelity-surface", arguments, run_fidelity_surface)
