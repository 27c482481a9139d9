import json
import math
import os
from enum import Enum
from typing import Any, Dict, Iterable, List, Optional

import numpy as np

from ..core.curves.BoundCurve import BoundCurve

CURVE_HEADER = ('D', 'R', 'feasible', 'winning_term')
COMBINED_HEADER = ('bound',) + CURVE_HEADER


def format_number(value: Optional[float]) -> str:
    """12 位有效数字；不可行或缺失时为空"""
    if value is None:
        return ''
    value = float(value)
    if math.isnan(value):
        return ''
    if value == 0.0:
        value = 0.0  # -0.0 与 0.0 输出一致
    return f"{value:.12g}"


def curve_rows(curve: BoundCurve) -> List[List[str]]:
    rows = []
    for point in curve.points:
        rows.append([
            format_number(point.distortion),
            format_number(point.rate if point.feasible else None),
            '1' if point.feasible else '0',
            point.winning_term or '',
        ])
    return rows


def _write_lines(path: str, lines: Iterable[str]) -> None:
    with open(path, 'w', encoding='utf-8', newline='\n') as f:
        for line in lines:
            f.write(line + '\n')


def write_curve_csv(curve: BoundCurve, path: str) -> None:
    lines = [','.join(CURVE_HEADER)]
    lines.extend(','.join(row) for row in curve_rows(curve))
    _write_lines(path, lines)


def write_combined_csv(curves: Iterable[BoundCurve], path: str) -> None:
    lines = [','.join(COMBINED_HEADER)]
    for curve in curves:
        lines.extend(','.join([curve.bound_id.value] + row) for row in curve_rows(curve))
    _write_lines(path, lines)


def to_jsonable(obj: Any) -> Any:
    """numpy 标量/数组、元组、枚举转为 JSON 可表示的值；NaN/inf 为 null"""
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return to_jsonable(obj.tolist())
    if isinstance(obj, Enum):
        return obj.value
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        value = float(obj)
        return value if math.isfinite(value) else None
    return obj


def dumps(document: Dict[str, Any]) -> str:
    return json.dumps(to_jsonable(document), sort_keys=True, indent=2, ensure_ascii=False, allow_nan=False)


def write_json(document: Dict[str, Any], path: str) -> None:
    _write_lines(path, [dumps(document)])


def write_curves(curves: List[BoundCurve], out_dir: str, metadata: Dict[str, Any]) -> List[str]:
    """每个界一个 CSV，加 curves.csv 与 metadata.json；返回写出的路径"""
    os.makedirs(out_dir, exist_ok=True)
    paths = []
    for curve in curves:
        path = os.path.join(out_dir, f"{curve.bound_id.value}.csv")
        write_curve_csv(curve, path)
        paths.append(path)
    combined = os.path.join(out_dir, 'curves.csv')
    write_combined_csv(curves, combined)
    paths.append(combined)
    meta_path = os.path.join(out_dir, 'metadata.json')
    write_json(metadata, meta_path)
    paths.append(meta_path)
    return paths
