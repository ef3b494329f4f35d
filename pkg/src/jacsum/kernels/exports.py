"""
表格导出

用 pyarrow 把行记录写成 CSV 或 Parquet（按扩展名判断）。
"""

import logging
import os
from typing import Any, Dict, List, Sequence

import pyarrow as pa
import pyarrow.csv as pacsv
import pyarrow.parquet as pq

logger = logging.getLogger(__name__)


def rows_to_table(rows: List[Dict[str, Any]], columns: Sequence[str]) -> pa.Table:
    if not rows:
        return pa.table({name: pa.array([], type=pa.int64()) for name in columns})
    return pa.Table.from_pylist(rows).select(list(columns))


def write_rows(rows: List[Dict[str, Any]], path: str, columns: Sequence[str]) -> str:
    """Write rows to path as CSV, or parquet when path ends with .parquet"""
    dir_name = os.path.dirname(path)
    if dir_name:
        os.makedirs(dir_name, exist_ok=True)
    table = rows_to_table(rows, columns)
    if path.endswith(".parquet"):
        pq.write_table(table, path)
    else:
        pacsv.write_csv(table, path)
    logger.info(f"Wrote {table.num_rows} rows to {path}")
    return path


def rows_to_csv_text(rows: List[Dict[str, Any]], columns: Sequence[str]) -> str:
    sink = pa.BufferOutputStream()
    pacsv.write_csv(rows_to_table(rows, columns), sink)
    return sink.getvalue().to_pybytes().decode("utf-8")
