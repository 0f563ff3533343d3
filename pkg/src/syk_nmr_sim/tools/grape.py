from mcp.types import Tool, TextContent

from syk_nmr_sim.config import RunConfig
from syk_nmr_sim.nmr_control import (
    ControlField,
    GrapeStop,
    SpinSystemParams,
    desk_two_spin_system,
    grape_optimize,
    robustness_profile,
    zz_target,
)
from syk_nmr_sim.tools.common import RUN_PROPERTIES, RunOutcome, handle_run, start_run
from syk_nmr_sim.utils import ConfigError, ConvergenceError, err_with_hint

SYSTEMS = {"two_spin": desk_two_spin_system, "four_spin": SpinSystemParams}


def get_grape_tool() -> Tool:
    """Return the run_grape tool definition."""
    return Tool(
        name="run_grape",
        description="Optimize a shaped NMR pulse with GRAPE for a ZZ rotation, robust to RF amplitude errors.",
        inputSchema={"type": "object", "properties": RUN_PROPERTIES},
    )


def run_grape(config: RunConfig) -> RunOutcome:
    p = config.params
    if p["system"] not in SYSTEMS:
        raise ConfigError(err_with_hint(f"Unknown spin system '{p['system']}'.", f"Use one of {sorted(SYSTEMS)}."))
    if p["target"]["kind"] != "zz":
        raise ConfigError(err_with_hint(f"Unknown target kind '{p['target']['kind']}'.", "Only 'zz' is supported."))
    system = SYSTEMS[p["system"]]()
    target = zz_target(system.spin_count, float(p["target"]["angle"]), tuple(p["target"]["spins"]))
    slices = int(p["slices"])
    init = ControlField.random(slices, float(p["duration_s"]) / slices, float(p["init_max_hz"]),
                               config.master_seed, float(p["amplitude_bound_hz"]))
    result = grape_optimize(
        target,
        init,
        system,
        robustness=p["robustness"],
        stop=GrapeStop(max_iter=int(p["max_iter"]), fidelity_goal=float(p["goal"])),
        initial_step=float(p["initial_step_hz"]),
        threads=config.threads,
    )
    profile = robustness_profile(result.field, target, system, p["profile_scales"])

    run = start_run(config)
    run.write_csv("field.csv", ("slice", "amplitude_hz", "phase_rad"), result.field.rows())
    run.write_json("field.json", result.field.header())
    run.write_csv("trace.csv", ("iter", "objective", "step_size"), result.trace)
    run.write_csv("robustness.csv", ("scale", "fidelity"), profile.rows())
    run.notes["converged"] = result.converged
    run.notes["objective"] = result.objective
    run.notes["iterations"] = result.trace[-1][0]
    run.notes["system"] = system.to_json()
    outcome = run.finish()
    if not result.converged:
        raise ConvergenceError(
            err_with_hint(f"GRAPE reached {result.objective:.6f}, below the goal {p['goal']}.",
                          f"Files are in {outcome.run_dir}."),
            result,
        )
    return outcome


async def handle_grape(arguments: dict) -> list[TextContent]:
    """Handle the run_grape tool call."""
    return await handle_run("grape", arguments, run_grape)
