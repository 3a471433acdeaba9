#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
运行配置模块

CliConfig 保存容差、迭代上限、输出格式和随机种子
默认值 < 环境变量 KSORB_* < 命令行参数
"""

import os
import sys
import logging
from dataclasses import dataclass, replace, asdict
from typing import Any, Dict, Optional

from .exceptions import ConfigurationError

OUTPUT_FORMATS = ('human', 'json', 'csv')
LOG_FORMAT = '%(asctime)s [%(levelname)s] %(name)s: %(message)s'


@dataclass(frozen=True)
class CliConfig:
    """命令行运行配置"""

    tolerance: float = 1e-12
    max_iterations: int = 200
    output_format: str = 'human'
    random_seed: int = 20240601
    isolation_bits: int = 64
    log_level: str = 'WARNING'

    def validate(self) -> 'CliConfig':
        """校验配置项

        Returns:
            自身，便于链式调用

        Raises:
            ConfigurationError: 配置项不合法
        """
        if not self.tolerance > 0:
            raise ConfigurationError('tolerance', '> 0', self.tolerance)
        if self.max_iterations < 1:
            raise ConfigurationError('max_iterations', '>= 1', self.max_iterations)
        if self.output_format not in OUTPUT_FORMATS:
            raise ConfigurationError('output_format', '/'.join(OUTPUT_FORMATS), self.output_format)
        if self.isolation_bits < 1:
            raise ConfigurationError('isolation_bits', '>= 1', self.isolation_bits)
        return self

    def with_overrides(self, **overrides: Any) -> 'CliConfig':
        """用非 None 的值覆盖配置项"""
        changes = {k: v for k, v in overrides.items() if v is not None}
        return replace(self, **changes)

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


def _env(name: str, cast, default):
    raw = os.getenv(name)
    if raw is None or raw == '':
        return default
    try:
        return cast(raw)
    except ValueError:
        raise ConfigurationError(name, cast.__name__, raw)


def load_config(environ_prefix: str = 'KSORB_') -> CliConfig:
    """从环境变量读取配置（均为可选）

    Args:
        environ_prefix: 环境变量前缀

    Returns:
        校验后的配置对象
    """
    base = CliConfig()
    config = CliConfig(
        tolerance=_env(environ_prefix + 'TOL', float, base.tolerance),
        max_iterations=_env(environ_prefix + 'MAX_ITER', int, base.max_iterations),
        output_format=_env(environ_prefix + 'FORMAT', str, base.output_format),
        random_seed=_env(environ_prefix + 'SEED', int, base.random_seed),
        log_level=_env(environ_prefix + 'LOG_LEVEL', str, base.log_level).upper(),
    )
    return config.validate()


def setup_logging(level: Optional[str] = None) -> None:
    """在 stderr 上安装日志处理器，stdout 只输出报告"""
    level_name = (level or 'WARNING').upper()
    numeric = logging.getLevelName(level_name)
    if not isinstance(numeric, int):
        raise ConfigurationError('log_level', 'DEBUG/INFO/WARNING/ERROR', level)
    root = logging.getLogger('KSOrbifold')
    root.setLevel(numeric)
    if not any(getattr(h, '_ksorb', False) for h in root.handlers):
        handler = logging.StreamHandler(sys.stderr)
        handler.setFormatter(logging.Formatter(LOG_FORMAT))
        handler._ksorb = True
        root.addHandler(handler)
