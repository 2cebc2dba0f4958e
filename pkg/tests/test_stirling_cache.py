# -*- coding: utf-8 -*-
import pytest

from exactmath import StirlingTable
from stirling_cache import MAGIC, StirlingCache, decode_table, encode_table


def test_encode_decode(tmp_path):
    table = StirlingTable(max_n=30)
    assert decode_table(encode_table(table.entries)) == table.entries


def test_decode_rejects_damage():
    blob = bytearray(encode_table(StirlingTable(max_n=5).entries))
    with pytest.raises(ValueError):
        decode_table(bytes(blob[:10]))
    blob[len(MAGIC) + 8] ^= 0xFF
    with pytest.raises(ValueError):
        decode_table(bytes(blob))


def test_save_and_load(tmp_path):
    path = tmp_path / 'cache' / 'stirling.bin'
    source = StirlingTable(max_n=40)
    ok, _ = StirlingCache(str(path)).save(source)
    assert ok
    target = StirlingTable()
    ok, message = StirlingCache(str(path)).load(target)
    assert ok, message
    assert target.max_n == 40
    assert target.get(40, 7) == source.get(40, 7)


def test_load_missing_file(tmp_path):
    ok, message = StirlingCache(str(tmp_path / 'none.bin')).load(StirlingTable())
    assert not ok
    assert message


def test_corrupted_cache_is_rejected_and_table_reset(tmp_path):
    path = tmp_path / 'stirling.bin'
    StirlingCache(str(path)).save(StirlingTable(max_n=10))
    blob = bytearray(path.read_bytes())
    blob[-40] ^= 0x01
    path.write_bytes(bytes(blob))

    target = StirlingTable(max_n=12)
    ok, _ = StirlingCache(str(path)).load(target)
    assert not ok
    assert target.entries == [[1]]
    # 清空后仍可按需重新计算
    assert target.get(10, 3) == 9330


def test_cache_violating_recurrence_is_rejected(tmp_path):
    entries = StirlingTable(max_n=6).entries
    entries[4][2] += 1
    path = tmp_path / 'stirling.bin'
    path.write_bytes(encode_table(entries))
    target = StirlingTable()
    ok, _ = StirlingCache(str(path)).load(target)
    assert not ok


def test_clear(tmp_path):
    path = tmp_path / 'stirling.bin'
    cache = StirlingCache(str(path))
    cache.save(StirlingTable(max_n=3))
    assert path.exists()
    assert cache.clear()[0]
    assert not path.exists()
    assert cache.clear()[0]
