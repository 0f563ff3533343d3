from mcp.types import Tool, TextContent

from syk_nmr_sim.config import RunConfig
from syk_nmr_sim.syk_model import (
    build_hamiltonian,
    coefficient_rms,
    coefficient_statistic,
    generate_couplings,
    pair_term_relation,
    sample_params,
    table_order,
)
from syk_nmr_sim.tools.common import RUN_PROPERTIES, RunOutcome, handle_run, model_params, start_run


def get_couplings_tool() -> Tool:
    """Return the run_couplings tool definition."""
    return Tool(
        name="run_couplings",
        description="Draw seeded SYK coupling samples and write their tensors and spin-term coefficients.",
        inputSchema={"type": "object", "properties": RUN_PROPERTIES},
    )


def run_couplings(config: RunConfig) -> RunOutcome:
    p = config.params
    base = model_params(p)
    run = start_run(config)
    statistics, rms = [], []
    for r in range(int(p["samples"])):
        couplings = generate_couplings(sample_params(base, config.master_seed, r))
        run.write_json(f"couplings-{r:02d}.json", couplings.to_json())

        rows = [("J", *key, value) for key, value in sorted(couplings.quadruples.items())]
        rows += [("C", i, j, "", "", value) for (i, j), value in sorted(couplings.pairs.items())]
        run.write_csv(f"couplings-{r:02d}.csv", ("kind", "i", "j", "k", "l", "value"), rows)

        h = build_hamiltonian(couplings)
        term_rows = [
            (rank, h.terms[index].support_label(), h.terms[index].weight, h.terms[index].coefficient.real)
            for rank, index in enumerate(table_order(h))
        ]
        run.write_csv(f"pauli-terms-{r:02d}.csv", ("index", "support", "weight", "coefficient"), term_rows)
        statistics.append(coefficient_statistic(h))
        rms.append(coefficient_rms(h))

    run.notes["coefficient_statistic"] = statistics
    run.notes["coefficient_rms"] = rms
    if base.mu != 0.0:
        relation = pair_term_relation(generate_couplings(sample_params(base, config.master_seed, 0)))
        run.notes["pair_term_relation"] = {
            "scale": relation.scale, "offset": relation.offset, "residual": relation.residual,
        }
    return run.finish()


async def handle_couplings(arguments: dict) -> list[TextContent]:
    """Handle the run_couplings tool call."""
    return await handle_run("couplings", arguments, run_couplings)
