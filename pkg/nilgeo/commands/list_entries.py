import argparse

from pydantic import BaseModel

from ..catalog import list_entries as catalog_entries
from ..display import console


class ListParams(BaseModel):
    """Parameters for the list command (none)."""


def list_entries(params: ListParams) -> int:
    for entry_id, summary in catalog_entries():
        console.print(f"{entry_id:<8} {summary}", markup=False, highlight=False, soft_wrap=True)
    return 0


def register(sub: argparse._SubParsersAction) -> None:
    sub.add_parser("list", help="List catalog entries")
