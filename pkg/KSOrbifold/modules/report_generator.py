#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
报告生成模块

功能：
1. 把各命令的结果字典渲染为文本（human）、JSON 或 CSV
2. 表格类结果（KE 表、动量轮廓采样）直接输出 CSV
3. 保存报告文件
"""

import json
import logging
import os
from typing import Any, Dict, List, Optional

import pandas as pd

from .exceptions import ValidationError

logger = logging.getLogger(__name__)

CSV_OPTIONS = {'index': False, 'lineterminator': '\n'}

REPORT_TITLES = {
    'fano': 'log Fano 判定',
    'index': 'Fano 指标',
    'ke-check': 'KE 判据',
    'ke-family': 'KE 族成员',
    'ke-table': 'KE 轨形表',
    'soliton': 'Kähler-Ricci 孤子',
    'csc': 'CSC 证书',
    'csc-sweep': 'CSC 证书随机扫描',
    'topology': '正则 S¹ 丛上同调',
    'orb-cohomology': '轨形上同调',
    'join': 'S³_w-join 识别',
    'yamazaki': 'Yamazaki 纤维联接',
    'lemma-scan': '整性引理扫描',
}


def to_csv_text(frame: pd.DataFrame) -> str:
    """无填充、LF 换行、带表头的 CSV 文本"""
    return frame.to_csv(**CSV_OPTIONS)


class ReportGenerator:
    """报告生成器"""

    def __init__(self):
        self.report_templates = {
            'human': self._generate_human_report,
            'json': self._generate_json_report,
            'csv': self._generate_csv_report,
        }

    def generate_report(self, report_type: str, report_data: Dict[str, Any],
                        format_type: str = 'human') -> str:
        """生成报告文本

        Args:
            report_type: 命令名（fano、csc、ke-table ...）
            report_data: 结果字典；表格结果放在 'table'（DataFrame）中
            format_type: human/json/csv

        Returns:
            报告内容

        Raises:
            ValidationError: 不支持的格式
        """
        generator = self.report_templates.get(format_type)
        if not generator:
            raise ValidationError('format', '/'.join(self.report_templates), format_type)
        return generator(report_type, report_data)

    def _generate_human_report(self, report_type: str, report_data: Dict[str, Any]) -> str:
        lines = [REPORT_TITLES.get(report_type, report_type), "=" * 60]
        summary = report_data.get('summary')
        if summary:
            lines.append(summary)
            lines.append("")

        table = report_data.get('table')
        if isinstance(table, pd.DataFrame):
            lines.append(table.to_string(index=False))

        for key, value in report_data.items():
            if key in ('summary', 'table'):
                continue
            lines.extend(self._format_value(key, value, 0))
        return "\n".join(lines) + "\n"

    def _format_value(self, key: str, value: Any, depth: int) -> List[str]:
        indent = "  " * depth
        if isinstance(value, pd.DataFrame):
            return [f"{indent}{key}: {len(value)} rows"]
        if isinstance(value, dict):
            lines = [f"{indent}{key}:"]
            for k, v in value.items():
                lines.extend(self._format_value(k, v, depth + 1))
            return lines
        if isinstance(value, list) and value and isinstance(value[0], dict):
            lines = [f"{indent}{key}:"]
            for i, item in enumerate(value):
                lines.extend(self._format_value(f"[{i}]", item, depth + 1))
            return lines
        if isinstance(value, (list, tuple)):
            value = ", ".join(str(v) for v in value)
        return [f"{indent}{key}: {value}"]

    def _generate_json_report(self, report_type: str, report_data: Dict[str, Any]) -> str:
        payload = {'command': report_type}
        for key, value in report_data.items():
            if isinstance(value, pd.DataFrame):
                value = value.to_dict(orient='records')
            payload[key] = value
        return json.dumps(payload, ensure_ascii=False, indent=2, default=str) + "\n"

    def _generate_csv_report(self, report_type: str, report_data: Dict[str, Any]) -> str:
        table = report_data.get('table')
        if isinstance(table, pd.DataFrame):
            return to_csv_text(table)
        rows = [{'key': key, 'value': value}
                for key, value in self._flatten(report_data).items()]
        return to_csv_text(pd.DataFrame(rows, columns=['key', 'value']))

    def _flatten(self, data: Dict[str, Any], prefix: str = '') -> Dict[str, Any]:
        flat = {}
        for key, value in data.items():
            name = f"{prefix}{key}"
            if isinstance(value, pd.DataFrame):
                continue
            if isinstance(value, dict):
                flat.update(self._flatten(value, name + '.'))
            elif isinstance(value, list) and value and isinstance(value[0], dict):
                for i, item in enumerate(value):
                    flat.update(self._flatten(item, f"{name}[{i}]."))
            elif isinstance(value, (list, tuple)):
                flat[name] = " ".join(str(v) for v in value)
            else:
                flat[name] = value
        return flat

    def save_report(self, content: str, file_path: str) -> Optional[str]:
        """保存报告文件

        Returns:
            文件路径，失败返回 None
        """
        try:
            directory = os.path.dirname(file_path)
            if directory:
                os.makedirs(directory, exist_ok=True)
            with open(file_path, 'w', encoding='utf-8', newline='') as f:
                f.write(content)
            logger.info("报告已保存: %s", file_path)
            return file_path
        except OSError as e:
            logger.error("保存报告失败: %s", e)
            return None
