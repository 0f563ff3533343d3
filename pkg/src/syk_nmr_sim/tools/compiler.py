import numpy as np
from mcp.types import Tool, TextContent

from syk_nmr_sim.config import RunConfig
from syk_nmr_sim.evolution import TrotterPlan, trotter_unitary, unitary_fidelity
from syk_nmr_sim.gate_compiler import (
    compile_hamiltonian,
    compiled_trotter_unitary,
    complexity_estimate,
    resources_for,
    verify_chain_identity,
)
from syk_nmr_sim.pauli_algebra import exp_pauli_term
from syk_nmr_sim.syk_model import (
    build_hamiltonian,
    coefficient_rms,
    coefficient_statistic,
    generate_couplings,
    sample_params,
    table_order,
)
from syk_nmr_sim.tools.common import RUN_PROPERTIES, RunOutcome, handle_run, model_params, start_run
from syk_nmr_sim.utils import DomainError

RESOURCE_HEADER = ("N", "m", "n", "one_body", "two_body", "total")
VERIFY_FIDELITY = 1 - 1e-9


def get_compile_tool() -> Tool:
    """Return the run_compile tool definition."""
    return Tool(
        name="run_compile",
        description="Compile every term of an SYK sample into one- and two-body rotations and count gates.",
        inputSchema={"type": "object", "properties": RUN_PROPERTIES},
    )


def run_compile(config: RunConfig) -> RunOutcome:
    p = config.params
    params = model_params(p)
    couplings = generate_couplings(sample_params(params, config.master_seed, int(p["sample_index"])))
    h = build_hamiltonian(couplings)
    steps = config.trotter_steps or int(p["steps"])
    dt = float(p["tau"]) / steps
    compiled = compile_hamiltonian(h, dt)

    sequences = []
    worst = 1.0
    for index in table_order(h):
        term, sequence = h.terms[index], compiled.sequences[index]
        if p["verify"]:
            worst = min(worst, unitary_fidelity(exp_pauli_term(term, dt), sequence.to_dense()))
        sequences.append({
            "support": term.support_label(),
            "coefficient": term.coefficient.real,
            "weight": term.weight,
            "global_phase": sequence.global_phase,
            "gates": sequence.to_json(),
        })

    estimates = [
        complexity_estimate(model_params(p, n_majorana=n), float(p["tau"]), float(p["epsilon"]), float(p["c"])).to_row()
        for n in p["estimate_N"]
    ]

    run = start_run(config)
    run.write_json("sequences.json", {"dt": dt, "steps": steps, "sequences": sequences})
    run.write_csv("resources.csv", RESOURCE_HEADER, [resources_for(h, steps, params.n_majorana).to_row()])
    run.write_csv("complexity.csv", RESOURCE_HEADER, estimates)
    run.notes["chain_identity"] = verify_chain_identity().to_json()
    run.notes["coefficient_rms"] = coefficient_rms(h)
    run.notes["coefficient_statistic"] = coefficient_statistic(h)
    if p["verify"]:
        plan = TrotterPlan.for_hamiltonian(h, float(p["tau"]), steps)
        drift = float(np.linalg.norm(compiled_trotter_unitary(h, plan) - trotter_unitary(h, plan), ord=2))
        run.notes["min_sequence_fidelity"] = worst
        run.notes["compiled_trotter_deviation"] = drift
    result = run.finish()
    if p["verify"] and worst <= VERIFY_FIDELITY:
        raise DomainError(f"Compiled sequence fidelity {worst:.12f} is below {VERIFY_FIDELITY}.")
    return result


async def handle_compile(arguments: dict) -> list[TextContent]:
    """Handle the run_compile tool call."""
    return await handle_run("compile", arguments, run_compile)
