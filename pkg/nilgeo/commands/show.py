import argparse

from pydantic import BaseModel, Field

from .. import catalog
from ..display import console, show_entry
from ..schema import FORMAT_VERSION, dumps, structure_document


class ShowParams(BaseModel):
    """Parameters for the show command."""

    entry: str = Field(description="Catalog id, e.g. G5.2")
    json_output: bool = Field(default=False, description="Print the machine-readable form")
    param: list[str] = Field(default_factory=list, description="Parameter overrides as name=value")


def parse_assignments(items: list[str]) -> dict[str, str]:
    values = {}
    for item in items:
        name, sep, value = item.partition("=")
        if not sep or not name.strip() or not value.strip():
            raise ValueError(f"expected name=value, got {item!r}")
        values[name.strip()] = value.strip()
    return values


def show(params: ShowParams) -> int:
    entry = catalog.get_entry(params.entry)
    values = {spec.name: spec.default for spec in entry.params}
    values.update(parse_assignments(params.param))
    instance = catalog.instantiate(entry, values)
    if not params.json_output:
        show_entry(entry, instance)
        return 0
    payload = {
        "format_version": FORMAT_VERSION,
        "id": entry.id,
        "summary": entry.summary,
        "parameters": [spec.model_dump() for spec in entry.params],
        "scalable": entry.scalable,
        "fixed": entry.fixed,
        "derived": sorted(entry.derived),
        "hermitian_condition": entry.hermitian_condition,
        "chain": [[list(v) for v in term] for term in entry.chain],
        "notes": list(entry.notes),
        "structure": structure_document(instance.algebra, instance.omega, instance.acs, instance.params).model_dump(mode="json"),
    }
    console.print(dumps(payload), markup=False, highlight=False, soft_wrap=True, end="")
    return 0


def register(sub: argparse._SubParsersAction) -> None:
    cmd = sub.add_parser("show", help="Show one catalog entry")
    cmd.add_argument("entry")
    cmd.add_argument("--json", dest="json_output", action="store_true")
    cmd.add_argument("--param", action="append", default=[], metavar="NAME=VALUE")
