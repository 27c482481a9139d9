#!/usr/bin/env python3
"""
记忆失真率失真界计算主程序
Rate-distortion bounds with one-step memory, main entry
"""

import sys
import os

# 添加仓库根目录到Python路径
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from src.srd_main import main

if __name__ == "__main__":
    main()
