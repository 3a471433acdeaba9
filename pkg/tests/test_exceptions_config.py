# -*- coding: utf-8 -*-
"""异常体系、运行配置与报告生成测试"""

import json
import logging
from io import StringIO

import pandas as pd
import pytest

from KSOrbifold.modules.config import CliConfig, load_config, setup_logging
from KSOrbifold.modules.exceptions import (
    EXIT_INTERNAL, EXIT_USER_ERROR, ConfigurationError, ErrorHandler, InternalInconsistency,
    KSOrbifoldError, NoRootFound, NotLogFano, ValidationError, handle_exception
)
from KSOrbifold.modules.report_generator import REPORT_TITLES, ReportGenerator, to_csv_text


class TestExceptions:
    def test_user_errors_exit_two(self):
        error = NotLogFano(orbifold='(2, 2, 1, 1)')
        assert error.exit_code == EXIT_USER_ERROR
        assert str(error).startswith('[NOT_LOG_FANO]')
        assert error.to_dict()['details'] == {'orbifold': '(2, 2, 1, 1)'}

    def test_internal_errors_exit_three(self):
        error = NoRootFound('no root', {'orbifold': '(1, 1, 1, 1)'})
        assert isinstance(error, InternalInconsistency)
        assert error.exit_code == EXIT_INTERNAL
        assert error.error_code == 'NO_ROOT_FOUND'
        assert error.details['check'] == 'csc_ray_existence'

    def test_validation_message(self):
        error = ValidationError('n', 'n1, n2 均不能为 0', (0, 1))
        assert 'n1, n2 均不能为 0' in error.message
        assert error.error_code == 'VALIDATION_ERROR'

    def test_unknown_errors_are_internal(self):
        handler = ErrorHandler(log_errors=False)
        info = handler.handle_error(ValueError('boom'), context='test')
        assert info['exit_code'] == EXIT_INTERNAL
        assert info['user_message'] == '系统发生未知错误。'
        assert handler.get_error_log() == []

    def test_error_log(self):
        handler = ErrorHandler()
        handler.handle_error(ConfigurationError('tolerance', '> 0', -1))
        log = handler.get_error_log()
        assert log[0]['error_code'] == 'CONFIGURATION_ERROR'
        handler.clear_error_log()
        assert handler.get_error_log() == []

    def test_print_error(self):
        stream = StringIO()
        ErrorHandler().print_error(ValidationError('list', '需要 2 个逗号分隔的值', '1'), 'fano', stream)
        text = stream.getvalue()
        assert '上下文: fano' in text
        assert '建议:' in text

    def test_decorator_wraps_unexpected_errors(self):
        @handle_exception
        def divide(a, b):
            return a / b

        with pytest.raises(InternalInconsistency) as exc:
            divide(1, 0)
        assert exc.value.details['function'] == 'divide'
        assert isinstance(exc.value.__cause__, ZeroDivisionError)

    def test_decorator_passes_domain_errors(self):
        @handle_exception
        def reject():
            raise NotLogFano()

        with pytest.raises(NotLogFano):
            reject()

    def test_base_class(self):
        error = KSOrbifoldError('message')
        assert error.error_code == 'KSOrbifoldError'
        assert error.exit_code == EXIT_USER_ERROR


class TestConfig:
    def test_defaults(self, monkeypatch):
        for name in ('KSORB_TOL', 'KSORB_MAX_ITER', 'KSORB_FORMAT', 'KSORB_SEED', 'KSORB_LOG_LEVEL'):
            monkeypatch.delenv(name, raising=False)
        config = load_config()
        assert config == CliConfig()
        assert config.tolerance == 1e-12
        assert config.max_iterations == 200

    def test_environment(self, monkeypatch):
        monkeypatch.setenv('KSORB_TOL', '1e-9')
        monkeypatch.setenv('KSORB_MAX_ITER', '50')
        monkeypatch.setenv('KSORB_LOG_LEVEL', 'debug')
        config = load_config()
        assert config.tolerance == 1e-9
        assert config.max_iterations == 50
        assert config.log_level == 'DEBUG'

    def test_bad_environment(self, monkeypatch):
        monkeypatch.setenv('KSORB_MAX_ITER', 'many')
        with pytest.raises(ConfigurationError):
            load_config()

    @pytest.mark.parametrize("changes", [
        {'tolerance': 0.0}, {'max_iterations': 0}, {'output_format': 'xml'}, {'isolation_bits': 0},
    ])
    def test_validate(self, changes):
        with pytest.raises(ConfigurationError):
            CliConfig().with_overrides(**changes).validate()

    def test_overrides_skip_none(self):
        config = CliConfig().with_overrides(tolerance=None, output_format='json')
        assert config.tolerance == 1e-12
        assert config.output_format == 'json'
        assert config.to_dict()['output_format'] == 'json'

    def test_setup_logging(self):
        setup_logging('debug')
        assert logging.getLogger('KSOrbifold').level == logging.DEBUG
        setup_logging('warning')
        handlers = [h for h in logging.getLogger('KSOrbifold').handlers if getattr(h, '_ksorb', False)]
        assert len(handlers) == 1
        with pytest.raises(ConfigurationError):
            setup_logging('loud')


class TestReportGenerator:
    def setup_method(self):
        self.generator = ReportGenerator()
        self.data = {
            'index': 7,
            'orbifold': {'n1': 48, 'n2': -8, 'm0': 60, 'minf': 45},
            'roots': [{'lo': '5/2', 'class': 'quasi-regular'}],
            'summary': 'index=7',
        }

    def test_human(self):
        text = self.generator.generate_report('index', self.data, 'human')
        lines = text.splitlines()
        assert lines[0] == REPORT_TITLES['index']
        assert 'index=7' in lines
        assert '  n1: 48' in lines
        assert '  [0]:' in lines

    def test_json(self):
        payload = json.loads(self.generator.generate_report('index', self.data, 'json'))
        assert payload['command'] == 'index'
        assert payload['orbifold']['minf'] == 45

    def test_csv_flattens(self):
        text = self.generator.generate_report('index', self.data, 'csv')
        lines = text.splitlines()
        assert lines[0] == 'key,value'
        assert 'orbifold.n2,-8' in lines
        assert 'roots[0].class,quasi-regular' in lines

    def test_table_csv(self):
        frame = pd.DataFrame([[1, 2]], columns=['a', 'b'])
        assert self.generator.generate_report('ke-table', {'table': frame}, 'csv') == 'a,b\n1,2\n'
        assert to_csv_text(frame) == 'a,b\n1,2\n'

    def test_frames_summarized_in_human_output(self):
        frame = pd.DataFrame({'z': [0.0, 1.0], 'F': [1.0, 0.0]})
        text = self.generator.generate_report('soliton', {'profile': frame}, 'human')
        assert 'profile: 2 rows' in text

    def test_unknown_format(self):
        with pytest.raises(ValidationError):
            self.generator.generate_report('index', self.data, 'xml')

    def test_save_report(self, tmp_path):
        target = tmp_path / 'nested' / 'report.txt'
        assert self.generator.save_report('a\nb\n', str(target)) == str(target)
        assert target.read_bytes() == b'a\nb\n'
