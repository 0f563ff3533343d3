"""Run reader tools - expose stored runs as callable tools."""
import json

from mcp.types import Tool, TextContent

from syk_nmr_sim.repos import run_repo
from syk_nmr_sim.utils import err_not_found, err_required


def get_list_runs_tool() -> Tool:
    """Return the list_runs tool definition."""
    return Tool(
        name="list_runs",
        description="List all stored runs. Returns run directory names and the command that produced them.",
        inputSchema={
            "type": "object",
            "properties": {},
            "required": []
        }
    )


async def handle_list_runs(arguments: dict) -> list[TextContent]:
    """Handle the list_runs tool call."""
    runs = run_repo.list_runs()
    if not runs:
        return [TextContent(type="text", text="No runs found. Start one with run_couplings!")]

    result = "Available runs:\n\n"
    for run_id, command in runs.items():
        result += f"- {run_id} ({command})\n"
    return [TextContent(type="text", text=result)]


def get_get_run_tool() -> Tool:
    """Return the get_run tool definition."""
    return Tool(
        name="get_run",
        description="Get the manifest of a stored run: config, seed, versions, file hashes and notes.",
        inputSchema={
            "type": "object",
            "properties": {
                "run_id": {
                    "type": "string",
                    "description": "Run directory name, e.g. couplings-1a2b3c4d5e6f"
                }
            },
            "required": ["run_id"]
        }
    )


async def handle_get_run(arguments: dict) -> list[TextContent]:
    """Handle the get_run tool call."""
    run_id = arguments.get("run_id")
    if not run_id:
        return [TextContent(type="text", text=err_required("run_id"))]

    manifest = run_repo.get_manifest(run_id)
    if manifest is None:
        return [TextContent(type="text", text=err_not_found("Run", run_id, "Use list_runs to see stored runs."))]

    return [TextContent(type="text", text=json.dumps(manifest, indent=2))]
