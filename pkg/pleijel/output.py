import json
import logging
import math
import sys
from typing import Any, Dict, List, Literal, Optional, Sequence

import pandas as pd
from pydantic import BaseModel, Field

from pleijel.utils import hash_object

logger = logging.getLogger(__name__)


class OutputSpec(BaseModel):
    """Where and how a table is written.

    Example:
    ```python
    from pleijel.output import OutputSpec, emit_table

    spec = OutputSpec(format="json", precision=8)
    emit_table(["N", "rho"], [[2, 0.63661977236758]], spec)
    ```
    """

    format: Literal["csv", "json"] = Field("csv", description="Table format.")
    path: Optional[str] = Field(
        None, description="Output file. None or '-' writes to standard output."
    )
    precision: int = Field(
        12, ge=4, le=17, description="Significant digits of floats."
    )


def round_value(value: Any, precision: int) -> Any:
    """Rounds floats to `precision` significant digits; NaN and inf become None."""
    if isinstance(value, bool) or not isinstance(value, float):
        return value
    if not math.isfinite(value):
        return None
    return float(f"{value:.{precision}g}")


def build_meta(
    domain: Optional[Dict[str, Any]] = None,
    tolerances: Optional[Dict[str, Any]] = None,
    **extra: Any,
) -> Dict[str, Any]:
    meta: Dict[str, Any] = dict(extra)
    if domain is not None:
        meta["domain"] = domain
    if tolerances is not None:
        meta["tolerances"] = tolerances
    meta["digest"] = hash_object(sorted(meta.items()))
    return meta


def format_table(
    columns: Sequence[str],
    rows: Sequence[Sequence[Any]],
    spec: OutputSpec,
    meta: Optional[Dict[str, Any]] = None,
) -> str:
    """Renders a table as CSV or JSON text.

    CSV goes through a pandas DataFrame with `%.{p}g` floats and `\\n` line
    endings. JSON is `{"meta": ..., "columns": [...], "rows": [[...]]}` with
    floats already rounded to p significant digits, so parsing the text back
    gives the emitted table exactly.
    """
    columns = list(columns)
    for row in rows:
        if len(row) != len(columns):
            raise ValueError(f"Row {row!r} does not match columns {columns!r}.")

    if spec.format == "csv":
        df = pd.DataFrame([list(row) for row in rows], columns=columns)
        return df.to_csv(
            index=False, float_format=f"%.{spec.precision}g", lineterminator="\n"
        )

    payload = {
        "meta": meta or {},
        "columns": columns,
        "rows": [[round_value(v, spec.precision) for v in row] for row in rows],
    }
    return json.dumps(payload, allow_nan=False) + "\n"


def emit_table(
    columns: Sequence[str],
    rows: Sequence[Sequence[Any]],
    spec: OutputSpec,
    meta: Optional[Dict[str, Any]] = None,
) -> None:
    text = format_table(columns, rows, spec, meta)
    if spec.path is None or spec.path == "-":
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    with open(spec.path, "w", newline="") as f:
        f.write(text)
    logger.info(f"Wrote {len(rows)} rows to {spec.path}")


def parse_json_table(text: str) -> List[List[Any]]:
    """The rows of a table emitted in JSON format."""
    return json.loads(text)["rows"]
