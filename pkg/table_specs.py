#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
表格规格配置模块
描述每张计数表的n范围与各列来源（公式或暴力枚举），以及暴力枚举的上限
"""

import json
import logging
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Tuple

from bounds import CountKind
from oracle import CENSUS_MAX_N, COUNT_NAMES, SLOW_MAX_N

logger = logging.getLogger(__name__)

COLUMN_SOURCES = ('formula', 'oracle')

_RANGE_PATTERN = re.compile(r'^\s*(\d+)\s*(?:\.\.\s*(\d+))?\s*$')


def parse_n_range(text: str) -> Tuple[int, int]:
    """解析 "a..b" 或单个 "a" 形式的闭区间

    Args:
        text: 区间文本

    Returns:
        (起点, 终点)
    """
    match = _RANGE_PATTERN.match(text or '')
    if not match:
        raise ValueError(f"无法解析n范围: {text!r}（应为 a..b）")
    start = int(match.group(1))
    end = int(match.group(2)) if match.group(2) else start
    if start > end:
        raise ValueError(f"n范围起点大于终点: {text!r}")
    return start, end


@dataclass
class ColumnSpec:
    """表中的一列"""
    key: str  # 列名（CSV表头）
    source: str  # 'formula' 或 'oracle'
    kind: str  # CountKind取值，或普查计数名
    max_n: Optional[int] = None  # 该列可给出数值的最大n，None表示不限

    def __post_init__(self):
        if self.source not in COLUMN_SOURCES:
            raise ValueError(f"列 {self.key} 的来源不合法: {self.source!r}")
        if self.source == 'formula':
            CountKind.from_name(self.kind)
        elif self.kind not in COUNT_NAMES:
            raise ValueError(f"列 {self.key} 的普查计数名不合法: {self.kind!r}")

    @property
    def count_kind(self) -> Optional[CountKind]:
        return CountKind.from_name(self.kind) if self.source == 'formula' else None

    def covers(self, n: int) -> bool:
        return self.max_n is None or n <= self.max_n


@dataclass
class TableSpec:
    """一张计数表的规格"""
    table_id: str
    display_name: str
    n_range: Tuple[int, int]
    columns: List[ColumnSpec] = field(default_factory=list)
    description: str = ''

    @property
    def column_keys(self) -> List[str]:
        return [column.key for column in self.columns]


@dataclass
class OracleSettings:
    """暴力枚举与校验的上限"""
    census_max_n: int = CENSUS_MAX_N
    slow_max_n: int = SLOW_MAX_N
    verify_fast_oracle_max_n: int = 5
    verify_full_exact_max_n: int = 8


def _columns(*items: Tuple[str, str, Optional[int]]) -> List[ColumnSpec]:
    return [ColumnSpec(key=kind, source=source, kind=kind, max_n=max_n) for kind, source, max_n in items]


class TableSpecs:
    """表格规格管理器"""

    CONFIG_FILE = Path(__file__).parent / 'table_specs_config.json'

    # 默认规格（配置文件缺失或损坏时使用）
    DEFAULT_SPECS = {
        'T1': TableSpec(
            table_id='T1',
            display_name='按单位元与按表示计数',
            n_range=(3, 10),
            columns=_columns(('identity', 'formula', None), ('presentation', 'formula', None)),
            description='3-幂零半群的个数：按单位元 t_n 与按表示',
        ),
        'T2': TableSpec(
            table_id='T2',
            display_name='交换情形',
            n_range=(3, 10),
            columns=_columns(('commutative_identity', 'formula', None),
                             ('commutative_presentation', 'formula', None)),
            description='交换3-幂零半群的个数：按单位元与按表示',
        ),
        'T3': TableSpec(
            table_id='T3',
            display_name='同构类',
            n_range=(3, 10),
            columns=_columns(('iso_semirigid', 'oracle', 7),
                             ('semirigid_iso_bound', 'formula', None),
                             ('iso_exact', 'formula', None)),
            description='半刚性同构类的实际个数、其上界以及全部同构类的精确个数',
        ),
        'T4': TableSpec(
            table_id='T4',
            display_name='自对偶同构类',
            n_range=(3, 10),
            columns=_columns(('selfdual_semirigid', 'oracle', 7),
                             ('selfdual_semirigid_bound', 'formula', None),
                             ('iso_selfdual', 'oracle', 6)),
            description='自对偶半刚性同构类的实际个数、其上界以及自对偶同构类个数',
        ),
        'T5': TableSpec(
            table_id='T5',
            display_name='等价类',
            n_range=(3, 10),
            columns=_columns(('equivalence_semirigid', 'oracle', 7),
                             ('equivalence_semirigid_bound', 'formula', None),
                             ('equivalence', 'oracle', 6)),
            description='半刚性等价类的实际个数、其上界以及全部等价类个数',
        ),
    }

    # 实际使用的规格（从配置文件加载或使用默认配置）
    SPECS: Dict[str, TableSpec] = {}
    ORACLE = OracleSettings()

    @classmethod
    def _load_config_file(cls) -> Dict:
        """读取配置文件，失败时返回空字典"""
        try:
            if cls.CONFIG_FILE.exists():
                with open(cls.CONFIG_FILE, 'r', encoding='utf-8') as f:
                    return json.load(f)
        except (json.JSONDecodeError, IOError) as e:
            logger.warning("配置文件 %s 读取失败，使用默认规格: %s", cls.CONFIG_FILE, e)
        return {}

    @classmethod
    def _load_specs_from_config(cls, config: Dict) -> Dict[str, TableSpec]:
        """从配置内容构造表格规格，缺少字段的条目跳过"""
        specs = {}
        for table_id, data in config.get('tables', {}).items():
            try:
                columns = [
                    ColumnSpec(key=column['key'], source=column['source'],
                               kind=column['kind'], max_n=column.get('max_n'))
                    for column in data['columns']
                ]
                specs[table_id] = TableSpec(
                    table_id=data['table_id'],
                    display_name=data['display_name'],
                    n_range=parse_n_range(data['n_range']),
                    columns=columns,
                    description=data.get('description', ''),
                )
            except KeyError as e:
                logger.warning("表格 %s 缺少字段 %s，已跳过", table_id, e)
                continue
            except ValueError as e:
                raise ValueError(f"表格 {table_id} 的配置无效: {e}")
        return specs

    @classmethod
    def _load_oracle_settings(cls, config: Dict) -> OracleSettings:
        data = config.get('oracle', {})
        settings = OracleSettings()
        for name in ('census_max_n', 'slow_max_n', 'verify_fast_oracle_max_n', 'verify_full_exact_max_n'):
            if name in data:
                value = data[name]
                if not isinstance(value, int) or value < 3:
                    raise ValueError(f"oracle配置项 {name} 必须是不小于3的整数: {value!r}")
                setattr(settings, name, value)
        if settings.slow_max_n < settings.census_max_n:
            raise ValueError("oracle配置项 slow_max_n 不能小于 census_max_n")
        return settings

    @classmethod
    def _initialize_specs(cls):
        """初始化表格规格"""
        if not cls.SPECS:
            config = cls._load_config_file()
            cls.SPECS = cls._load_specs_from_config(config)
            cls.ORACLE = cls._load_oracle_settings(config)

            # 配置文件加载失败或为空时使用默认规格
            if not cls.SPECS:
                cls.SPECS = dict(cls.DEFAULT_SPECS)

    @classmethod
    def reload_config(cls, config_file: Optional[Path] = None):
        """重新加载配置文件

        Args:
            config_file: 新的配置文件路径（可选）
        """
        if config_file is not None:
            cls.CONFIG_FILE = Path(config_file)
        cls.SPECS = {}
        cls.ORACLE = OracleSettings()
        cls._initialize_specs()

    @classmethod
    def get_spec(cls, table_id: str) -> TableSpec:
        """按编号获取表格规格，未知编号抛出ValueError"""
        cls._initialize_specs()
        spec = cls.SPECS.get(table_id.strip().upper())
        if spec is None:
            raise ValueError(f"未知的表格编号: {table_id!r}（可选: {', '.join(cls.get_table_ids())}）")
        return spec

    @classmethod
    def get_table_ids(cls) -> List[str]:
        cls._initialize_specs()
        return sorted(cls.SPECS.keys())

    @classmethod
    def oracle_settings(cls) -> OracleSettings:
        cls._initialize_specs()
        return cls.ORACLE

    @classmethod
    def validate_n_range(cls, n_range: Tuple[int, int]) -> Tuple[bool, str]:
        """检查请求的n范围

        Returns:
            (是否有效, 错误信息)
        """
        start, end = n_range
        if start < 3:
            return False, f"n必须不小于3: {start}"
        if start > end:
            return False, f"n范围起点大于终点: {start}..{end}"
        return True, ""
