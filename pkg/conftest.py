# -*- coding: utf-8 -*-
"""pytest 公共夹具：固定随机种子与常用轨形"""

from pathlib import Path

import numpy as np
import pytest

from KSOrbifold.modules.config import CliConfig
from KSOrbifold.modules.orbifold import KSOrbifold, random_admissible

TEST_SEED = CliConfig().random_seed
GOLDEN_DIR = Path(__file__).parent / 'tests' / 'golden'


@pytest.fixture
def rng():
    return np.random.default_rng(TEST_SEED)


@pytest.fixture
def golden_appendix() -> str:
    return (GOLDEN_DIR / 'appendix_table.csv').read_text(encoding='utf-8')


@pytest.fixture
def monotone():
    """单调 Fano 情形 (1, 1, 1, 1)"""
    return KSOrbifold(1, 1, 1, 1)


@pytest.fixture
def koiso_sakane():
    """(1, -1, 1, 1)"""
    return KSOrbifold(1, -1, 1, 1)


@pytest.fixture
def draw_admissible(rng):
    """返回随机 (KSOrbifold, AdmissiblePair) 生成器；same_sign=True 时 n1·n2 > 0"""

    def draw(same_sign: bool = False, diagonal: bool = False):
        return random_admissible(rng, same_sign=same_sign, diagonal=diagonal)

    return draw
