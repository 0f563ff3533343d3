"""MCP stdio server exposing the simulation pipelines and stored runs."""
import asyncio
import logging
import sys

from mcp.server import Server
from mcp.server.stdio import stdio_server
from mcp.types import Tool, TextContent, ResourceTemplate

from syk_nmr_sim.tools import get_all_tools, call_tool as tools_call_tool
from syk_nmr_sim.resources import list_resources, list_resource_templates, read_resource

logger = logging.getLogger(__name__)

app = Server("syk-nmr-sim")


@app.list_tools()
async def list_tools() -> list[Tool]:
    return get_all_tools()


@app.call_tool()
async def call_tool(name: str, arguments: dict) -> list[TextContent]:
    logger.info("Tool call %s", name)
    return await tools_call_tool(name, arguments or {})


@app.list_resources()
async def handle_list_resources():
    return await list_resources()


@app.read_resource()
async def handle_read_resource(uri: str) -> str:
    return await read_resource(uri)


@app.list_resource_templates()
async def handle_list_resource_templates() -> list[ResourceTemplate]:
    return list_resource_templates()


async def main():
    # stdout carries the protocol
    logging.basicConfig(stream=sys.stderr, level=logging.INFO, format="%(asctime)s %(name)s %(levelname)s %(message)s")
    logger.info("Starting syk-nmr-sim MCP server")
    async with stdio_server() as (read_stream, write_stream):
        await app.run(read_stream, write_stream, app.create_initialization_options())


def run():
    asyncio.run(main())


if __name__ == "__main__":
    run()
