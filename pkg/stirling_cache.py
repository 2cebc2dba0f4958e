#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
斯特林表缓存模块
将斯特林数三角表持久化到二进制文件，加载时校验摘要与递推关系，
文件损坏时拒绝使用并由调用方重新计算
"""

import hashlib
import logging
import os
import struct
from typing import List, Optional, Tuple

from exactmath import StirlingTable, default_table

logger = logging.getLogger(__name__)

MAGIC = b'NCSTIRL\x00'
FORMAT_VERSION = 1

# 魔数、格式版本、最大行号
HEADER = struct.Struct('>8sHI')
LENGTH = struct.Struct('>I')
DIGEST_SIZE = hashlib.sha256().digest_size


def encode_table(entries: List[List[int]]) -> bytes:
    """逐行编码：每个数为4字节长度前缀加大端无符号字节串，末尾附sha256摘要"""
    parts = [HEADER.pack(MAGIC, FORMAT_VERSION, len(entries) - 1)]
    for row in entries:
        for value in row:
            if value < 0:
                raise ValueError(f"斯特林数不能为负: {value}")
            data = value.to_bytes((value.bit_length() + 7) // 8, 'big')
            parts.append(LENGTH.pack(len(data)))
            parts.append(data)
    body = b''.join(parts)
    return body + hashlib.sha256(body).digest()


def decode_table(blob: bytes) -> List[List[int]]:
    """解码缓存内容

    Raises:
        ValueError: 格式、版本或摘要不符
    """
    if len(blob) < HEADER.size + DIGEST_SIZE:
        raise ValueError("缓存文件过短")
    body, digest = blob[:-DIGEST_SIZE], blob[-DIGEST_SIZE:]
    if hashlib.sha256(body).digest() != digest:
        raise ValueError("缓存摘要不符")
    magic, version, max_n = HEADER.unpack_from(body, 0)
    if magic != MAGIC:
        raise ValueError("不是斯特林表缓存文件")
    if version != FORMAT_VERSION:
        raise ValueError(f"不支持的缓存版本: {version}")

    offset = HEADER.size
    entries: List[List[int]] = []
    for m in range(max_n + 1):
        row = []
        for _ in range(m + 1):
            if offset + LENGTH.size > len(body):
                raise ValueError(f"缓存在第 {m} 行被截断")
            (length,) = LENGTH.unpack_from(body, offset)
            offset += LENGTH.size
            if offset + length > len(body):
                raise ValueError(f"缓存在第 {m} 行被截断")
            row.append(int.from_bytes(body[offset:offset + length], 'big'))
            offset += length
        entries.append(row)
    if offset != len(body):
        raise ValueError("缓存末尾有多余数据")
    return entries


class StirlingCache:
    """斯特林表缓存文件"""

    def __init__(self, cache_file: str):
        self.cache_file = cache_file

    def save(self, table: Optional[StirlingTable] = None) -> Tuple[bool, str]:
        """保存斯特林表

        Args:
            table: 要保存的表，默认使用模块默认表

        Returns:
            (是否成功, 信息)
        """
        table = table or default_table()
        try:
            with table.lock:
                blob = encode_table(table.entries)
                max_n = table.max_n
            output_dir = os.path.dirname(self.cache_file)
            if output_dir and not os.path.exists(output_dir):
                os.makedirs(output_dir)
            with open(self.cache_file, 'wb') as f:
                f.write(blob)
            logger.info("斯特林表已保存到 %s（%d 行）", self.cache_file, max_n + 1)
            return True, f"已保存 {max_n + 1} 行到 {self.cache_file}"
        except (OSError, ValueError) as e:
            logger.error("保存斯特林表缓存失败: %s", e)
            return False, f"保存失败: {e}"

    def load(self, table: Optional[StirlingTable] = None) -> Tuple[bool, str]:
        """加载并校验缓存

        校验通过才替换表内容；否则表被清空为初始状态，后续按需重新计算。

        Returns:
            (是否成功, 信息)
        """
        table = table or default_table()
        if not os.path.exists(self.cache_file):
            return False, f"缓存文件不存在: {self.cache_file}"
        try:
            with open(self.cache_file, 'rb') as f:
                entries = decode_table(f.read())
            candidate = StirlingTable()
            candidate.entries = entries
            if not candidate.check_recurrence():
                raise ValueError("缓存内容不满足斯特林递推关系")
        except (OSError, ValueError, struct.error) as e:
            logger.warning("拒绝使用斯特林表缓存 %s: %s", self.cache_file, e)
            table.reset()
            return False, f"缓存无效，将重新计算: {e}"

        table.replace_entries(entries)
        logger.info("已从 %s 加载斯特林表（%d 行）", self.cache_file, len(entries))
        return True, f"已加载 {len(entries)} 行"

    def clear(self) -> Tuple[bool, str]:
        """删除缓存文件"""
        if not os.path.exists(self.cache_file):
            return True, "缓存文件不存在，无需清理"
        try:
            os.remove(self.cache_file)
            return True, f"已删除 {self.cache_file}"
        except OSError as e:
            logger.error("删除缓存失败: %s", e)
            return False, f"删除失败: {e}"
