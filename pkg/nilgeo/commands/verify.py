import argparse
import logging
from pathlib import Path

from pydantic import BaseModel, Field

from .. import catalog
from ..display import console, summary_table
from ..schema import dumps, summary_payload
from ..verify import run_all, run_suite, summarize

logger = logging.getLogger(__name__)


class VerifyParams(BaseModel):
    """Parameters for the verify command."""

    group: str | None = Field(default=None, description="Catalog id; every entry when omitted")
    samples: int = Field(default=20, ge=1, description="Parameter samples per entry")
    seed: int = Field(default=42, ge=0)
    out: Path | None = Field(default=None, description="Write the JSON report here instead of stdout")
    timings: bool = Field(default=False, description="Include wall-clock times in the report")
    threads: int | None = Field(default=None, ge=1, description="Overrides NILGEO_THREADS")


def verify(params: VerifyParams) -> int:
    if params.group is not None:
        entry = catalog.get_entry(params.group)
        summary = summarize(run_suite(entry, params.samples, params.seed, params.threads), params.samples, params.seed)
    else:
        summary = run_all(params.samples, params.seed, params.threads,
                          progress=lambda entry_id: logger.info("queued %s", entry_id))
    text = dumps(summary_payload(summary, timings=params.timings))
    if params.out is None:
        console.print(text, markup=False, highlight=False, soft_wrap=True, end="")
    else:
        params.out.write_text(text, encoding="utf-8")
        summary_table(summary)
    return 0 if summary.failures == 0 else 1


def register(sub: argparse._SubParsersAction) -> None:
    cmd = sub.add_parser("verify", help="Run the verification suite")
    cmd.add_argument("--group")
    cmd.add_argument("--samples", type=int, default=20)
    cmd.add_argument("--seed", type=int, default=42)
    cmd.add_argument("--out", type=Path)
    cmd.add_argument("--timings", action="store_true")
    cmd.add_argument("--threads", type=int)
