# -*- coding: utf-8 -*-
"""KS 轨形（Koiso-Sakane 轨形）上的 KE、孤子、CSC 与拓扑计算"""

from .main import KSOrbifoldSystem

__version__ = '1.0.0'
__all__ = ['KSOrbifoldSystem']
