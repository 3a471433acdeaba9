# -*- coding: utf-8 -*-
"""计算模块：精确算术、轨形数据、KE/孤子、CSC、拓扑、join 与报告"""
