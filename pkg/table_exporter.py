#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
计数表导出模块
负责将计数表导出为CSV或JSON，并支持逐行写出（长时间计算时先输出已完成的行）
"""

import csv
import io
import json
import logging
import os
import threading
from dataclasses import dataclass, field
from typing import Dict, IO, List, Optional, Union

logger = logging.getLogger(__name__)

SUPPORTED_FORMATS = ['csv', 'json']

# CSV中不可用单元格的占位符
MISSING = '-'


@dataclass
class OutputRecord:
    """一个单元格：大整数以十进制字符串保存"""
    n: int
    kind: str
    value: Optional[str]
    rational: Optional[str] = None


@dataclass
class CountTable:
    """一组带标签的序列 {n → 值}，每列一种计数"""
    table_id: str
    columns: List[str]
    rows: Dict[int, Dict[str, Optional[int]]] = field(default_factory=dict)
    rationals: Dict[int, Dict[str, str]] = field(default_factory=dict)

    def set_value(self, n: int, column: str, value: Optional[int], rational: Optional[str] = None):
        """写入单元格，value为None表示该列在此n处不可用"""
        if column not in self.columns:
            raise ValueError(f"表 {self.table_id} 没有列 {column}")
        self.rows.setdefault(n, {c: None for c in self.columns})[column] = value
        if rational is not None:
            self.rationals.setdefault(n, {})[column] = rational

    def records(self) -> List[OutputRecord]:
        """按n、再按列顺序展开为单元格记录"""
        result = []
        for n in sorted(self.rows):
            for column in self.columns:
                value = self.rows[n].get(column)
                result.append(OutputRecord(
                    n=n,
                    kind=column,
                    value=None if value is None else str(value),
                    rational=self.rationals.get(n, {}).get(column),
                ))
        return result

    def row_dict(self, n: int) -> Dict:
        """单行的JSON结构"""
        row: Dict = {'n': n}
        for column in self.columns:
            value = self.rows.get(n, {}).get(column)
            row[column] = None if value is None else str(value)
        if self.rationals.get(n):
            row['rational'] = {c: self.rationals[n][c] for c in self.columns if c in self.rationals[n]}
        return row

    def to_json_dict(self) -> Dict:
        return {
            'table_id': self.table_id,
            'columns': list(self.columns),
            'rows': [self.row_dict(n) for n in sorted(self.rows)],
        }

    @classmethod
    def from_json(cls, data: Union[str, Dict]) -> 'CountTable':
        """由JSON文本或已解析的字典重建计数表"""
        if isinstance(data, str):
            data = json.loads(data)
        table = cls(table_id=data['table_id'], columns=list(data['columns']))
        for row in data['rows']:
            n = int(row['n'])
            rational = row.get('rational', {})
            for column in table.columns:
                value = row.get(column)
                table.set_value(n, column, None if value is None else int(value), rational.get(column))
        return table


class TableExporter:
    """计数表导出器"""

    def __init__(self):
        self.supported_formats = list(SUPPORTED_FORMATS)

    @staticmethod
    def csv_header(columns: List[str], include_rational: bool = False) -> List[str]:
        header = ['n'] + list(columns)
        if include_rational:
            header += [f"{column}_rational" for column in columns]
        return header

    @staticmethod
    def csv_cells(table: CountTable, n: int, include_rational: bool = False) -> List[str]:
        values = table.rows.get(n, {})
        cells = [str(n)]
        for column in table.columns:
            value = values.get(column)
            cells.append(MISSING if value is None else str(value))
        if include_rational:
            rationals = table.rationals.get(n, {})
            cells += [rationals.get(column, MISSING) for column in table.columns]
        return cells

    def render_csv(self, table: CountTable, include_rational: bool = False) -> str:
        """CSV文本：UTF-8、LF换行，不可用单元格为 "-" """
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator='\n')
        writer.writerow(self.csv_header(table.columns, include_rational))
        for n in sorted(table.rows):
            writer.writerow(self.csv_cells(table, n, include_rational))
        return buffer.getvalue()

    def render_json(self, table: CountTable) -> str:
        """JSON文本：大整数为十进制字符串，不可用单元格为null"""
        return json.dumps(table.to_json_dict(), ensure_ascii=False, indent=2) + '\n'

    def render(self, table: CountTable, format_type: str = 'csv', include_rational: bool = False) -> str:
        format_type = format_type.lower()
        if format_type not in self.supported_formats:
            raise ValueError(f"不支持的导出格式: {format_type}。支持的格式: {', '.join(self.supported_formats)}")
        if format_type == 'csv':
            return self.render_csv(table, include_rational)
        return self.render_json(table)


class IncrementalTableWriter:
    """逐行写出的计数表

    CSV每完成一行立即写出并刷新；JSON在结束时整体写出。
    两种方式的最终内容与 TableExporter 一次性导出的结果逐字节相同。
    """

    def __init__(self):
        self.exporter = TableExporter()
        self.stream: Optional[IO[str]] = None
        self.owns_stream = False
        self.format_type: Optional[str] = None
        self.include_rational = False
        self.table: Optional[CountTable] = None
        self.lock = threading.Lock()
        self.is_initialized = False

    def initialize_export(self, output: Union[str, IO[str]], table_id: str, columns: List[str],
                          format_type: str = 'csv', include_rational: bool = False) -> bool:
        """打开输出并写出表头

        Args:
            output: 输出文件路径，或已打开的文本流（如sys.stdout）
            table_id: 表编号
            columns: 列名
            format_type: 'csv' 或 'json'
            include_rational: CSV是否附带有理数列

        Returns:
            初始化是否成功
        """
        with self.lock:
            self.format_type = format_type.lower()
            if self.format_type not in SUPPORTED_FORMATS:
                raise ValueError(f"不支持的导出格式: {format_type}")
            try:
                if isinstance(output, str):
                    output_dir = os.path.dirname(output)
                    if output_dir and not os.path.exists(output_dir):
                        os.makedirs(output_dir)
                    self.stream = open(output, 'w', newline='', encoding='utf-8')
                    self.owns_stream = True
                else:
                    self.stream = output
                    self.owns_stream = False
            except OSError as e:
                logger.error("无法打开输出 %s: %s", output, e)
                return False

            self.include_rational = include_rational
            self.table = CountTable(table_id=table_id, columns=list(columns))
            if self.format_type == 'csv':
                self._write_csv_line(self.exporter.csv_header(columns, include_rational))
            self.is_initialized = True
            return True

    def _write_csv_line(self, cells: List[str]):
        buffer = io.StringIO()
        csv.writer(buffer, lineterminator='\n').writerow(cells)
        self.stream.write(buffer.getvalue())
        self.stream.flush()

    def add_row(self, n: int, values: Dict[str, Optional[int]],
                rationals: Optional[Dict[str, str]] = None) -> bool:
        """写入一行

        Returns:
            添加是否成功
        """
        if not self.is_initialized:
            return False
        with self.lock:
            for column in self.table.columns:
                rational = (rationals or {}).get(column)
                self.table.set_value(n, column, values.get(column), rational)
            if self.format_type == 'csv':
                self._write_csv_line(self.exporter.csv_cells(self.table, n, self.include_rational))
        return True

    def finalize_export(self) -> Optional[CountTable]:
        """结束导出

        Returns:
            写出的完整计数表；未初始化时返回None
        """
        if not self.is_initialized:
            return None
        with self.lock:
            try:
                if self.format_type == 'json':
                    self.stream.write(self.exporter.render_json(self.table))
                self.stream.flush()
                return self.table
            finally:
                self._close()
                self.is_initialized = False

    def _close(self):
        if self.stream is not None and self.owns_stream:
            self.stream.close()
        self.stream = None
        self.owns_stream = False

    def cleanup(self):
        """释放资源（中断时调用）"""
        with self.lock:
            self._close()
            self.is_initialized = False
