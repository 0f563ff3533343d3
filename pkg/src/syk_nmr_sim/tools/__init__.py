from .couplings import get_couplings_tool, handle_couplings, run_couplings
from .fidelity_surface import get_fidelity_surface_tool, handle_fidelity_surface, run_fidelity_surface
from .correlation import get_correlation_tool, handle_correlation, run_correlation
from .scaling import get_scaling_tool, handle_scaling, run_scaling
from .compiler import get_compile_tool, handle_compile, run_compile
from .grape import get_grape_tool, handle_grape, run_grape
from .readers import get_list_runs_tool, handle_list_runs, get_get_run_tool, handle_get_run

# Single source of truth for all tools: (name, get_tool_fn, handler_fn)
# Add new tools here - server.py will auto-discover them
TOOL_REGISTRY = [
    # Pipelines
    ("run_couplings", get_couplings_tool, handle_couplings),
    ("run_fidelity_surface", get_fidelity_surface_tool, handle_fidelity_surface),
    ("run_correlation", get_correlation_tool, handle_correlation),
    ("run_scaling", get_scaling_tool, handle_scaling),
    ("run_compile", get_compile_tool, handle_compile),
    ("run_grape", get_grape_tool, handle_grape),
    # Readers
    ("list_runs", get_list_runs_tool, handle_list_runs),
    ("get_run", get_get_run_tool, handle_get_run),
]

# Command name -> synchronous pipeline, shared by the CLI
RUNNERS = {
    "couplings": run_couplings,
    "fidelity-surface": run_fidelity_surface,
    "correlation": run_correlation,
    "scaling": run_scaling,
    "compile": run_compile,
    "grape": run_grape,
}


def get_all_tools():
    """Get all tool definitions."""
    return [get_tool() for _, get_tool, _ in TOOL_REGISTRY]


def get_tool_handlers():
    """Get mapping of tool names to handlers."""
    return {name: handler for name, _, handler in TOOL_REGISTRY}


async def call_tool(name: str, arguments: dict):
    """Call a tool by name."""
    handlers = get_tool_handlers()
    if name not in handlers:
        raise ValueError(f"Unknown tool: {name}")
    return await handlers[name](arguments)
