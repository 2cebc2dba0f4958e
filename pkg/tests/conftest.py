# -*- coding: utf-8 -*-
import sys
from pathlib import Path

import pytest

# 模块位于仓库根目录
sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

from exactmath import default_table  # noqa: E402
from table_specs import TableSpecs  # noqa: E402


@pytest.fixture
def restore_specs():
    """测试中改动配置后恢复默认配置文件"""
    original = TableSpecs.CONFIG_FILE
    yield
    TableSpecs.reload_config(original)


@pytest.fixture
def fresh_table():
    """测试结束后把默认斯特林表清回初始状态"""
    yield default_table()
    default_table().reset()
