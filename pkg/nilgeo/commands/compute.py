import argparse
from pathlib import Path

from pydantic import BaseModel, Field

from ..acs import nijenhuis
from ..curvature import curvature_report, validate_structure
from ..display import console
from ..errors import DocumentError
from ..schema import curvature_payload, dumps, load_document, parse_structure


class ComputeParams(BaseModel):
    """Parameters for the compute command."""

    input: Path = Field(description="JSON document with algebra, omega and J")
    out: Path | None = Field(default=None, description="Write the report here instead of stdout")


def compute(params: ComputeParams) -> int:
    doc = load_document(params.input.read_text(encoding="utf-8"))
    algebra, omega, j = parse_structure(doc)
    if j is None:
        raise DocumentError("J", "compute needs an almost complex structure")
    metric = validate_structure(algebra, omega, j)
    report = curvature_report(algebra, omega, j, metric)
    integrable = not any(x for plane in nijenhuis(algebra, j) for row in plane for x in row)
    text = dumps(curvature_payload(report, algebra, omega, j, nijenhuis_nonzero=not integrable))
    if params.out is None:
        console.print(text, markup=False, highlight=False, soft_wrap=True, end="")
    else:
        params.out.write_text(text, encoding="utf-8")
    return 0


def register(sub: argparse._SubParsersAction) -> None:
    cmd = sub.add_parser("compute", help="Curvature of a user-supplied structure")
    cmd.add_argument("--input", type=Path, required=True)
    cmd.add_argument("--out", type=Path)
