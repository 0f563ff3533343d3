import json

from mcp.types import Resource, ResourceTemplate

from syk_nmr_sim.repos import run_repo

MIME_TYPES = {".json": "application/json", ".csv": "text/csv"}


async def list_resources() -> list[Resource]:
    """List available resources dynamically."""
    resources = [
        Resource(
            uri="runs://list",
            name="Run List",
            description="List of all stored runs",
            mimeType="application/json"
        )
    ]

    for run_id, command in run_repo.list_runs().items():
        run_dir = run_repo.root / run_id
        for path in sorted(run_dir.iterdir()):
            if path.suffix not in MIME_TYPES:
                continue
            resources.append(Resource(
                uri=f"runs://{run_id}/{path.name}",
                name=f"{run_id} - {path.name}",
                description=f"{path.name} from the {command} run {run_id}",
                mimeType=MIME_TYPES[path.suffix]
            ))

    return resources


async def read_resource(uri: str) -> str:
    """Read resource content by URI."""
    uri = str(uri)

    if uri == "runs://list":
        runs = [{"id": run_id, "command": command} for run_id, command in run_repo.list_runs().items()]
        return json.dumps(runs, indent=2)

    # runs://{run}/ or runs://{run}/{file}
    if uri.startswith("runs://"):
        path_parts = uri.removeprefix("runs://").strip("/").split("/")

        if len(path_parts) == 1:
            run_id = path_parts[0]
            run_dir = run_repo.root / run_id
            if not run_dir.is_dir():
                return json.dumps({"error": f"Run not found: {run_id}"})
            files = sorted(f.name for f in run_dir.iterdir() if f.suffix in MIME_TYPES)
            return json.dumps({"run": run_id, "files": files}, indent=2)

        elif len(path_parts) == 2:
            run_id, filename = path_parts
            file_path = run_repo.root / run_id / filename
            if not file_path.is_file():
                return json.dumps({"error": f"File not found: {filename}"})
            return file_path.read_text()

    return json.dumps({"error": f"Unknown resource: {uri}"})


def list_resource_templates() -> list[ResourceTemplate]:
    """URI templates for stored run directories and their files."""
    return [
        ResourceTemplate(
            uriTemplate="runs://{run_id}/",
            name="Run Files",
            description="File listing of one stored run",
            mimeType="application/json"
        ),
        ResourceTemplate(
            uriTemplate="runs://{run_id}/{file}",
            name="Run File",
            description="A CSV or JSON output file, or manifest.json, of a stored run"
        ),
    ]
