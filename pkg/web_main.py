#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
KS 轨形计算系统 Web 版本
提供与命令行一一对应的 HTTP JSON 接口

请求体示例：{"n": [1, -1], "m": [1, 1], "r": ["1/2", "-1/2"]}
成功返回 {"success": true, "result": ...}；输入错误返回 400，内部不一致返回 500
"""

import os
from typing import Any, Dict, List

import pandas as pd
from flask import Flask, jsonify, request
from flask_cors import CORS

from KSOrbifold.main import KSOrbifoldSystem
from KSOrbifold.modules.config import load_config, setup_logging
from KSOrbifold.modules.exceptions import (
    EXIT_USER_ERROR, ValidationError, get_global_error_handler
)

# Flask应用初始化
app = Flask(__name__)
CORS(app)  # 允许跨域请求

# 配置JSON响应确保中文字符正确显示
app.config['JSON_AS_ASCII'] = False
app.json.ensure_ascii = False

system = KSOrbifoldSystem(load_config())
error_handler = get_global_error_handler()


def _jsonable(value: Any) -> Any:
    if isinstance(value, pd.DataFrame):
        return value.to_dict(orient='records')
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return value


def _field(data: Dict[str, Any], key: str, size: int) -> List:
    value = data.get(key)
    if not isinstance(value, (list, tuple)) or len(value) != size:
        raise ValidationError(key, f'需要长度为 {size} 的数组', value)
    return list(value)


def _body() -> Dict[str, Any]:
    data = request.get_json(silent=True)
    if not isinstance(data, dict):
        raise ValidationError('body', '需要 JSON 对象')
    return data


def _respond(context: str, compute):
    """执行计算并统一包装响应"""
    try:
        return jsonify({"success": True, "result": _jsonable(compute())})
    except Exception as e:
        info = error_handler.handle_error(e, context=context)
        status = 400 if info['exit_code'] == EXIT_USER_ERROR else 500
        return jsonify({"success": False, "error": _jsonable(info)}), status


@app.route('/api/status', methods=['GET'])
def status():
    """服务状态"""
    return jsonify({"success": True, "result": system.status()})


@app.route('/api/fano', methods=['POST'])
def fano():
    def compute():
        data = _body()
        return system.fano(*_field(data, 'n', 2), *_field(data, 'm', 2))
    return _respond('fano', compute)


@app.route('/api/ke/family', methods=['POST'])
def ke_family():
    def compute():
        return system.ke_family(*_field(_body(), 'params', 4))
    return _respond('ke-family', compute)


@app.route('/api/ke/table', methods=['GET'])
def ke_table():
    """内置附录表格"""
    return _respond('ke-table', lambda: system.ke_table())


@app.route('/api/soliton', methods=['POST'])
def soliton():
    def compute():
        data = _body()
        return system.soliton(*_field(data, 'n', 2), *_field(data, 'm', 2),
                              samples=int(data.get('samples', 101)))
    return _respond('soliton', compute)


@app.route('/api/csc', methods=['POST'])
def csc():
    def compute():
        data = _body()
        return system.csc(*_field(data, 'n', 2), *_field(data, 'm', 2), *_field(data, 'r', 2))
    return _respond('csc', compute)


@app.route('/api/topology', methods=['POST'])
def topology():
    def compute():
        data = _body()
        return system.topology(*_field(data, 'n', 2), _field(data, 'c', 3))
    return _respond('topology', compute)


@app.route('/api/orb-cohomology', methods=['POST'])
def orb_cohomology():
    def compute():
        data = _body()
        c = _field(data, 'c', 3) if data.get('c') is not None else None
        return system.orb_cohomology(*_field(data, 'n', 2), *_field(data, 'm', 2), c=c)
    return _respond('orb-cohomology', compute)


@app.route('/api/join', methods=['POST'])
def join():
    def compute():
        data = _body()
        return system.join(*_field(data, 'n', 2), *_field(data, 'm', 2), data.get('r'))
    return _respond('join', compute)


@app.route('/api/yamazaki', methods=['POST'])
def yamazaki():
    def compute():
        data = _body()
        return system.yamazaki(*_field(data, 'n', 2), *_field(data, 'r', 2))
    return _respond('yamazaki', compute)


def main():
    """主函数"""
    setup_logging(os.getenv('KSORB_LOG_LEVEL', 'INFO'))
    port = int(os.getenv('KSORB_PORT', '6000'))
    print("KS 轨形计算服务启动中...")
    print(f"访问地址: http://localhost:{port}/api/status")
    print("=" * 60)
    app.run(host='0.0.0.0', port=port, debug=False)


if __name__ == "__main__":
    main()
