"""
测试公共夹具

每个测试结束后恢复全局配置并关闭线程池，避免测试之间互相影响。
"""

from pathlib import Path

import pytest

from plugins.common import TrialRunner, config
from plugins.core import BooleanFunction


@pytest.fixture(autouse=True)
def restore_config():
    saved = {name: getattr(config, name) for name in type(config).model_fields}
    yield
    for name, value in saved.items():
        setattr(config, name, value)
    TrialRunner.get_instance().reset()


@pytest.fixture(params=[1, 8], ids=["threads1", "threads8"])
def threads(request):
    """在单线程与 8 线程下各跑一次"""
    config.threads = request.param
    return request.param


@pytest.fixture
def write_function(tmp_path: Path):
    """把布尔函数写成真值表文件，返回路径字符串"""

    def write(f: BooleanFunction, name: str = "f.tt") -> str:
        path = tmp_path / name
        path.write_text(f.to_text(), encoding="utf-8")
        return str(path)

    return write


@pytest.fixture
def write_text(tmp_path: Path):
    """写任意文本文件，返回路径字符串"""

    def write(name: str, text: str) -> str:
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return str(path)

    return write
