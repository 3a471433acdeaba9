#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
异常处理模块

定义项目中使用的所有自定义异常类和错误处理机制
提供统一的错误信息、解决建议和命令行退出码映射

退出码约定：
    0 - 正常
    2 - 用户输入错误（参数不合法、前提条件不满足）
    3 - 内部不一致（定理被"证伪"，说明实现存在缺陷）
"""

import sys
import logging
import functools
import traceback
from datetime import datetime
from typing import Optional, Dict, Any, List

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USER_ERROR = 2
EXIT_INTERNAL = 3


class KSOrbifoldError(Exception):
    """KS轨形计算异常基类

    所有项目相关异常的基类，提供统一的错误处理接口
    """

    exit_code = EXIT_USER_ERROR

    def __init__(self, message: str, error_code: Optional[str] = None,
                 details: Optional[Dict[str, Any]] = None):
        """初始化异常

        Args:
            message: 错误消息
            error_code: 错误代码
            details: 错误详情
        """
        super().__init__(message)
        self.message = message
        self.error_code = error_code or self.__class__.__name__
        self.details = details or {}
        self.timestamp = datetime.now().isoformat()

    def to_dict(self) -> Dict[str, Any]:
        """转换为字典格式

        Returns:
            错误信息字典
        """
        return {
            'error_type': self.__class__.__name__,
            'error_code': self.error_code,
            'message': self.message,
            'details': {k: str(v) for k, v in self.details.items()},
            'exit_code': self.exit_code,
            'timestamp': self.timestamp
        }

    def __str__(self) -> str:
        return f"[{self.error_code}] {self.message}"


class UserInputError(KSOrbifoldError):
    """用户输入错误（退出码 2）"""

    exit_code = EXIT_USER_ERROR


class InternalInconsistency(KSOrbifoldError):
    """内部不一致错误（退出码 3）

    当交叉校验失败或数学定理保证的结论未能成立时抛出
    """

    exit_code = EXIT_INTERNAL

    def __init__(self, check: str, error_details: Optional[str] = None,
                 details: Optional[Dict[str, Any]] = None):
        """初始化内部不一致错误

        Args:
            check: 失败的校验名称
            error_details: 错误详情
            details: 附加数据
        """
        message = f"内部校验失败: {check}"
        if error_details:
            message += f"，详情: {error_details}"
        merged = {'check': check}
        merged.update(details or {})
        super().__init__(message, 'INTERNAL_INCONSISTENCY', merged)


class ValidationError(UserInputError):
    """数据验证错误

    当输入数据验证失败时抛出
    """

    def __init__(self, field_name: str, validation_rule: str,
                 field_value: Optional[Any] = None):
        """初始化验证错误

        Args:
            field_name: 字段名称
            validation_rule: 验证规则
            field_value: 字段值
        """
        message = f"数据验证失败: {field_name}，规则: {validation_rule}"
        if field_value is not None:
            message += f"，实际值: {field_value}"
        details = {
            'field_name': field_name,
            'validation_rule': validation_rule,
            'field_value': field_value
        }
        super().__init__(message, 'VALIDATION_ERROR', details)


class ConfigurationError(UserInputError):
    """配置错误

    当运行配置不正确时抛出
    """

    def __init__(self, config_item: str, expected_value: Optional[str] = None,
                 actual_value: Optional[Any] = None):
        """初始化配置错误

        Args:
            config_item: 配置项名称
            expected_value: 期望值
            actual_value: 实际值
        """
        message = f"配置错误: {config_item}"
        if expected_value:
            message += f"，期望: {expected_value}"
        if actual_value is not None:
            message += f"，实际: {actual_value}"
        details = {
            'config_item': config_item,
            'expected_value': expected_value,
            'actual_value': actual_value
        }
        super().__init__(message, 'CONFIGURATION_ERROR', details)


class ArithmeticInputError(UserInputError):
    """精确算术层的输入错误基类"""

    code = 'ARITHMETIC_ERROR'
    default_message = '精确算术输入不合法'

    def __init__(self, message: Optional[str] = None, **details):
        super().__init__(message or self.default_message, self.code, details)


class DegreeTooHigh(ArithmeticInputError):
    """被积多项式次数过高，积分会出现对数项"""

    code = 'DEGREE_TOO_HIGH'
    default_message = '多项式次数须小于 s - 1'


class ZeroPolynomial(ArithmeticInputError):
    """零多项式没有孤立实根"""

    code = 'ZERO_POLYNOMIAL'
    default_message = '不能对零多项式做实根隔离'


class SingularSystem(ArithmeticInputError):
    """2x2 线性方程组的行列式为零"""

    code = 'SINGULAR_SYSTEM'
    default_message = '线性方程组奇异（行列式为 0）'


class NoSignChange(ArithmeticInputError):
    """二分区间两端函数值同号"""

    code = 'NO_SIGN_CHANGE'
    default_message = '区间端点处函数值没有变号'


class MaxIterations(ArithmeticInputError):
    """迭代预算内未达到容差"""

    code = 'MAX_ITERATIONS'
    default_message = '在迭代次数上限内未达到指定容差'


class ScaleOverflow(ArithmeticInputError):
    """外扩加倍搜索超出上限仍未找到变号区间"""

    code = 'SCALE_OVERFLOW'
    default_message = '外扩加倍次数超出上限'


class NotLogFano(ArithmeticInputError):
    code = 'NOT_LOG_FANO'
    default_message = '该轨形不是 log Fano'


class SignMismatch(ArithmeticInputError):
    code = 'SIGN_MISMATCH'
    default_message = 'r_i 的符号必须与 n_i 相同'


class NotAdmissible(ArithmeticInputError):
    code = 'NOT_ADMISSIBLE'
    default_message = '该上同调类不是可容许类'


class ZeroTwist(ArithmeticInputError):
    code = 'ZERO_TWIST'
    default_message = 'n1·n2 = 0 时 Kähler 锥条件未定义'


class NonIntegerClass(ArithmeticInputError):
    code = 'NON_INTEGER_CLASS'
    default_message = '上同调类系数必须为整数'


class NotPrimitive(ArithmeticInputError):
    code = 'NOT_PRIMITIVE'
    default_message = '上同调类必须是本原的（系数 gcd 为 1）'


class NotKahler(ArithmeticInputError):
    code = 'NOT_KAHLER'
    default_message = '上同调类不在 Kähler 锥内'


class WrongSignRegime(ArithmeticInputError):
    code = 'WRONG_SIGN_REGIME'
    default_message = '参数符号不满足该操作的前提（n1·n2 的符号或 r 的符号）'


class GcdHypothesisFailed(ArithmeticInputError):
    code = 'GCD_HYPOTHESIS_FAILED'
    default_message = 'gcd(m0, m∞, |n|) 必须为 1'


class BOutOfRange(ArithmeticInputError):
    code = 'B_OUT_OF_RANGE'
    default_message = '参数 b 必须满足 |b| > 1'


class NoRootFound(InternalInconsistency):
    """h(b) 在 |b| > 1 上没有实根，与存在性定理矛盾"""

    def __init__(self, error_details: Optional[str] = None,
                 details: Optional[Dict[str, Any]] = None):
        super().__init__('csc_ray_existence', error_details, details)
        self.error_code = 'NO_ROOT_FOUND'


class ErrorHandler:
    """错误处理器

    提供统一的错误处理、日志记录和退出码映射
    """

    def __init__(self, log_errors: bool = True, show_traceback: bool = False):
        """初始化错误处理器

        Args:
            log_errors: 是否记录错误日志
            show_traceback: 是否显示堆栈跟踪
        """
        self.log_errors = log_errors
        self.show_traceback = show_traceback
        self.error_log: List[Dict[str, Any]] = []

    def handle_error(self, error: Exception, context: Optional[str] = None) -> Dict[str, Any]:
        """处理错误

        Args:
            error: 异常对象
            context: 错误上下文

        Returns:
            错误信息字典
        """
        error_info = {
            'timestamp': datetime.now().isoformat(),
            'context': context,
            'error_type': type(error).__name__,
            'message': str(error),
            'exit_code': self.exit_code_for(error)
        }

        if isinstance(error, KSOrbifoldError):
            error_info.update(error.to_dict())
        error_info['user_message'] = self.get_user_friendly_message(error)
        error_info['suggestions'] = self.get_error_suggestions(error)

        if self.show_traceback:
            error_info['traceback'] = traceback.format_exc()

        if self.log_errors:
            self.error_log.append(error_info)
            if error_info['exit_code'] == EXIT_INTERNAL:
                logger.error("%s (%s)", error, context)
            else:
                logger.info("%s (%s)", error, context)

        return error_info

    @staticmethod
    def exit_code_for(error: Exception) -> int:
        """异常到命令行退出码的映射"""
        if isinstance(error, KSOrbifoldError):
            return error.exit_code
        return EXIT_INTERNAL

    def get_user_friendly_message(self, error: Exception) -> str:
        """获取用户友好的错误消息

        Args:
            error: 异常对象

        Returns:
            用户友好的错误消息
        """
        if isinstance(error, InternalInconsistency):
            return "内部一致性校验失败，这通常意味着实现缺陷，请保留输入参数并报告。"

        elif isinstance(error, (ValidationError, ConfigurationError)):
            return "输入参数不符合要求，请检查后重新输入。"

        elif isinstance(error, (NotLogFano, NotAdmissible, SignMismatch, WrongSignRegime,
                                GcdHypothesisFailed, ZeroTwist)):
            return "给定的轨形或 Kähler 类不满足该计算的前提条件。"

        elif isinstance(error, (NotKahler, NotPrimitive, NonIntegerClass)):
            return "给定的上同调类不满足整性、本原性或 Kähler 条件。"

        elif isinstance(error, (NoSignChange, MaxIterations, ScaleOverflow)):
            return "数值求根未能完成，请调整容差或迭代上限。"

        elif isinstance(error, KSOrbifoldError):
            return "输入数据不符合要求，请检查并重新输入。"

        else:
            return "系统发生未知错误。"

    def get_error_suggestions(self, error: Exception) -> list:
        """获取错误解决建议

        Args:
            error: 异常对象

        Returns:
            解决建议列表
        """
        suggestions = []

        if isinstance(error, ValidationError):
            suggestions.extend([
                "整数参数用逗号分隔，例如 --n 1,-1 --m 1,1",
                "有理数使用 num/den 形式，例如 --r 1/2,-1/2"
            ])

        elif isinstance(error, ConfigurationError):
            suggestions.extend([
                "检查 KSORB_* 环境变量设置",
                "确认 --tol 为正数、--max-iter 至少为 1"
            ])

        elif isinstance(error, NotLogFano):
            suggestions.append("log Fano 要求 n_i/m∞ < 2 且 -n_i/m0 < 2")

        elif isinstance(error, SignMismatch):
            suggestions.append("r_i 与 n_i 必须同号，且 0 < |r_i| < 1")

        elif isinstance(error, (MaxIterations, NoSignChange)):
            suggestions.extend([
                "增大 --max-iter",
                "放宽 --tol"
            ])

        elif isinstance(error, InternalInconsistency):
            suggestions.extend([
                "使用 --log-level DEBUG 重新运行以获取中间结果",
                "保存输入参数以便复现"
            ])

        return suggestions

    def print_error(self, error: Exception, context: Optional[str] = None, stream=None):
        """打印错误信息（输出到 stderr，stdout 只保留报告）

        Args:
            error: 异常对象
            context: 错误上下文
            stream: 输出流
        """
        stream = stream or sys.stderr
        print(f"错误: {self.get_user_friendly_message(error)}", file=stream)

        if context:
            print(f"上下文: {context}", file=stream)

        if isinstance(error, KSOrbifoldError):
            print(f"详细信息: {error}", file=stream)
        else:
            print(f"详细信息: {type(error).__name__}: {error}", file=stream)

        suggestions = self.get_error_suggestions(error)
        if suggestions:
            print("建议:", file=stream)
            for i, suggestion in enumerate(suggestions, 1):
                print(f"   {i}. {suggestion}", file=stream)

        if self.show_traceback:
            print(f"\n技术详情:\n{traceback.format_exc()}", file=stream)

    def get_error_log(self) -> list:
        return self.error_log.copy()

    def clear_error_log(self):
        self.error_log.clear()


def handle_exception(func):
    """异常处理装饰器

    领域异常原样抛出；其他异常包装为 InternalInconsistency，保证调用方总能拿到退出码

    Args:
        func: 被装饰的函数

    Returns:
        装饰后的函数
    """
    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except KSOrbifoldError:
            raise
        except Exception as e:
            logger.exception("函数 %s 执行失败", func.__name__)
            raise InternalInconsistency(
                f"function:{func.__name__}",
                f"{type(e).__name__}: {e}",
                {'function': func.__name__}
            ) from e

    return wrapper


default_error_handler = ErrorHandler(log_errors=True, show_traceback=False)


def get_global_error_handler() -> ErrorHandler:
    """获取全局错误处理器

    Returns:
        错误处理器实例
    """
    return default_error_handler
