#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
KS 轨形计算系统主程序
命令行入口，具体子命令见 KSOrbifold/cli.py

用法示例：
    python main.py fano --n 48,-8 --m 60,45
    python main.py ke-table --builtin appendix
    python main.py csc --n 5,1 --m 1,1 --r 121/145,2/5 --format json
"""

import sys

from KSOrbifold.cli import main

if __name__ == "__main__":
    sys.exit(main())
