import os
from typing import Any, Dict, Optional, Sequence, Tuple

import numpy as np
import yaml

from ...core.errors.Errors import ConfigError, UnsupportedCombinationError, ValidationError
from ...core.problem.DistortionTensor import DistortionTensor
from ...core.problem.Presets import fig2_tensor, gamma_hamming_tensor
from ...core.problem.SourcePmf import SourcePmf
from ..Configs import (
    DistortionSpec, GridConfig, MasterConfig, ProblemConfig, SolverConfig, SystemConfig
)

PRESET_PARAMS = {
    'fig2': ('c',),
    'gamma_hamming': ('gamma',),
    'gaussian': ('sigma2', 'gamma'),
}
SECTION_KEYS = {
    'problem': {'source', 'distortion', 'y0'},
    'solver': set(SolverConfig().to_dict()),
    'grid': {'start', 'stop', 'count'},
    'system': {'log_level', 'log_file', 'threads'},
}
LOG_LEVELS = ('DEBUG', 'INFO', 'WARNING', 'ERROR', 'CRITICAL')


def _as_float(value: Any) -> Optional[float]:
    """数字或形如 "1e-10" 的字符串（YAML 1.1 不把它当作浮点数）"""
    if isinstance(value, bool):
        return None
    if isinstance(value, (int, float)):
        return float(value)
    if isinstance(value, str):
        try:
            return float(value)
        except ValueError:
            return None
    return None


class _Lines:
    """YAML 节点树，用于把字段路径映射到行号"""

    def __init__(self, root: Optional[yaml.Node] = None):
        self.root = root

    def line(self, path: Sequence[str]) -> Optional[int]:
        node, line = self.root, None
        for key in path:
            if not isinstance(node, yaml.MappingNode):
                break
            for k, v in node.value:
                if k.value == key:
                    node, line = v, k.start_mark.line + 1
                    break
            else:
                break
        return line

    def error(self, message: str, path: Sequence[str]) -> ConfigError:
        return ConfigError(message, field='.'.join(path), line=self.line(path))


class ConfigLoader:
    """配置加载器"""

    @staticmethod
    def load_from_file(file_path: str) -> MasterConfig:
        """从文件加载配置"""
        if not os.path.exists(file_path):
            raise ConfigError(f"config file not found: {file_path}")
        with open(file_path, 'r', encoding='utf-8') as f:
            text = f.read()
        return ConfigLoader.load_from_text(text)

    @staticmethod
    def load_from_text(text: str) -> MasterConfig:
        try:
            config_data = yaml.safe_load(text)
            root = yaml.compose(text, Loader=yaml.SafeLoader)
        except yaml.YAMLError as e:
            mark = getattr(e, 'problem_mark', None)
            raise ConfigError(f"malformed YAML: {getattr(e, 'problem', e)}",
                              line=mark.line + 1 if mark else None) from None
        return ConfigLoader._parse_config(config_data, _Lines(root))

    @staticmethod
    def load_from_dict(config_dict: Dict[str, Any]) -> MasterConfig:
        """从字典加载配置"""
        return ConfigLoader._parse_config(config_dict, _Lines())

    @staticmethod
    def _parse_config(config_data: Any, lines: _Lines) -> MasterConfig:
        """解析配置数据"""
        if not isinstance(config_data, dict):
            raise ConfigError("top level must be a mapping with a 'problem' section")
        for section, value in config_data.items():
            if section not in SECTION_KEYS:
                raise lines.error("unknown section", [str(section)])
            if not isinstance(value, dict):
                raise lines.error("section must be a mapping", [section])
            unknown = set(value) - SECTION_KEYS[section]
            if unknown:
                key = sorted(str(k) for k in unknown)[0]
                raise lines.error("unknown key", [section, key])
        if 'problem' not in config_data:
            raise ConfigError("missing required section", field='problem')

        problem = ConfigLoader._parse_problem(config_data['problem'], lines)
        solver = ConfigLoader._parse_section(SolverConfig, config_data.get('solver', {}), 'solver', lines)
        grid = ConfigLoader._parse_section(GridConfig, config_data.get('grid', {}), 'grid', lines)
        system = ConfigLoader._parse_system(config_data.get('system', {}), lines)
        return MasterConfig(problem=problem, solver=solver, grid=grid, system=system)

    @staticmethod
    def _parse_section(cls, data: Dict[str, Any], name: str, lines: _Lines):
        defaults = cls()
        kwargs = {}
        for key, value in data.items():
            expected = getattr(defaults, key)
            path = [name, key]
            if isinstance(expected, bool):
                if not isinstance(value, bool):
                    raise lines.error(f"expected true/false, got {value!r}", path)
            elif isinstance(expected, int):
                if isinstance(value, bool) or not isinstance(value, int):
                    raise lines.error(f"expected an integer, got {value!r}", path)
            elif isinstance(expected, float):
                number = _as_float(value)
                if number is None:
                    raise lines.error(f"expected a number, got {value!r}", path)
                value = number
            elif isinstance(expected, tuple):
                numbers = [_as_float(v) for v in value] if isinstance(value, list) else [None]
                if any(v is None for v in numbers):
                    raise lines.error(f"expected a list of numbers, got {value!r}", path)
                value = tuple(numbers)
            kwargs[key] = value
        try:
            return cls(**kwargs)
        except ValidationError as e:
            field = next((k for k in kwargs if f"{name}.{k}" in str(e)), None)
            raise lines.error(str(e), [name, field] if field else [name]) from None

    @staticmethod
    def _parse_system(data: Dict[str, Any], lines: _Lines) -> SystemConfig:
        level = str(data.get('log_level', 'INFO')).upper()
        if level not in LOG_LEVELS:
            raise lines.error(f"expected one of {', '.join(LOG_LEVELS)}", ['system', 'log_level'])
        threads = data.get('threads')
        if threads is not None and (isinstance(threads, bool) or not isinstance(threads, int) or threads < 1):
            raise lines.error(f"expected a positive integer, got {threads!r}", ['system', 'threads'])
        log_file = data.get('log_file')
        return SystemConfig(log_level=level, log_file=str(log_file) if log_file else None, threads=threads)

    @staticmethod
    def _parse_problem(data: Dict[str, Any], lines: _Lines) -> ProblemConfig:
        if 'distortion' not in data:
            raise lines.error("missing required key", ['problem', 'distortion'])
        distortion = ConfigLoader._parse_distortion(data['distortion'], lines)

        source = data.get('source')
        if source is not None:
            if not isinstance(source, list) or not all(
                    isinstance(v, (int, float)) and not isinstance(v, bool) for v in source):
                raise lines.error("expected a list of probabilities", ['problem', 'source'])
            source = tuple(float(v) for v in source)

        y0 = data.get('y0', 0)
        if isinstance(y0, bool) or not isinstance(y0, int) or y0 < 0:
            raise lines.error(f"expected a non-negative integer, got {y0!r}", ['problem', 'y0'])

        problem = ProblemConfig(distortion=distortion, source=source, y0=y0)
        if not distortion.is_gaussian:
            # 提前构造一次，把校验错误定位到字段
            ConfigLoader._build(problem, lines)
        return problem

    @staticmethod
    def _parse_distortion(data: Any, lines: _Lines) -> DistortionSpec:
        path = ['problem', 'distortion']
        if not isinstance(data, dict):
            raise lines.error("expected a mapping with 'preset' or 'values'", path)
        has_preset, has_values = 'preset' in data, 'values' in data
        if has_preset == has_values:
            raise lines.error("exactly one of 'preset' or 'values' is required", path)

        if has_values:
            extra = set(data) - {'values'}
            if extra:
                raise lines.error("unexpected key next to 'values'", path + [sorted(map(str, extra))[0]])
            try:
                arr = np.array(data['values'], dtype=float)
            except (TypeError, ValueError):
                raise lines.error("values must be a 3-dimensional nested list of numbers", path + ['values']) from None
            if arr.ndim != 3:
                raise lines.error(f"values must be 3-dimensional, got {arr.ndim} dimensions", path + ['values'])
            return DistortionSpec(values=tuple(tuple(tuple(row) for row in m) for m in arr.tolist()))

        preset = data['preset']
        if preset not in PRESET_PARAMS:
            raise lines.error(f"unknown preset {preset!r}, expected one of {sorted(PRESET_PARAMS)}", path + ['preset'])
        allowed = set(PRESET_PARAMS[preset]) | {'preset'}
        if preset == 'gamma_hamming':
            allowed.add('size')
        extra = set(data) - allowed
        if extra:
            raise lines.error(f"unexpected parameter for preset {preset}", path + [sorted(map(str, extra))[0]])
        params = []
        for name in PRESET_PARAMS[preset]:
            value = data.get(name)
            if isinstance(value, bool) or not isinstance(value, (int, float)):
                raise lines.error(f"preset {preset} needs a numeric '{name}'", path + [name])
            params.append((name, float(value)))
        if 'size' in data:
            size = data['size']
            if isinstance(size, bool) or not isinstance(size, int) or size < 2:
                raise lines.error("expected an integer of at least 2", path + ['size'])
            params.append(('size', float(size)))
        return DistortionSpec(preset=preset, params=tuple(params))

    @staticmethod
    def _build(problem: ProblemConfig, lines: _Lines) -> Tuple[SourcePmf, DistortionTensor]:
        spec = problem.distortion
        path = ['problem', 'distortion']
        try:
            if spec.values is not None:
                tensor = DistortionTensor(np.array(spec.values, dtype=float))
            elif spec.preset == 'fig2':
                tensor = fig2_tensor(spec.param('c'))
            else:
                size = int(dict(spec.params).get('size', 2))
                tensor = gamma_hamming_tensor(spec.param('gamma'), size)
        except ValidationError as e:
            raise lines.error(str(e), path) from None
        try:
            source = SourcePmf(np.array(problem.source)) if problem.source is not None \
                else SourcePmf.uniform(tensor.x_size)
            tensor.check_source(source)
        except ValidationError as e:
            raise lines.error(str(e), ['problem', 'source']) from None
        if problem.y0 >= tensor.y_size:
            raise lines.error(f"y0={problem.y0} outside the reproduction alphabet of size {tensor.y_size}",
                              ['problem', 'y0'])
        return source, tensor

    @staticmethod
    def build_problem(problem: ProblemConfig) -> Tuple[SourcePmf, DistortionTensor]:
        """有限字母表问题的 (信源, 失真张量)"""
        if problem.distortion.is_gaussian:
            raise UnsupportedCombinationError("the gaussian preset has no finite-alphabet tensor")
        return ConfigLoader._build(problem, _Lines())

    @staticmethod
    def gaussian_spec(problem: ProblemConfig):
        from ...gaussian.GaussianBounds import GaussianSpec
        if not problem.distortion.is_gaussian:
            raise UnsupportedCombinationError("problem is not a gaussian preset")
        return GaussianSpec(problem.distortion.param('sigma2'), problem.distortion.param('gamma'))

    @staticmethod
    def to_normalized_dict(config: MasterConfig) -> Dict[str, Any]:
        """预设展开为显式张量后的配置字典"""
        problem = config.problem
        if problem.distortion.is_gaussian:
            distortion = {'preset': 'gaussian', **dict(problem.distortion.params)}
            problem_dict = {'distortion': distortion, 'y0': problem.y0}
        else:
            source, tensor = ConfigLoader.build_problem(problem)
            problem_dict = {
                'source': source.probs.tolist(),
                'distortion': {'values': tensor.values.tolist()},
                'y0': problem.y0,
            }
        system = {'log_level': config.system.log_level}
        if config.system.log_file:
            system['log_file'] = config.system.log_file
        if config.system.threads:
            system['threads'] = config.system.threads
        return {
            'problem': problem_dict,
            'solver': config.solver.to_dict(),
            'grid': {'start': config.grid.start, 'stop': config.grid.stop, 'count': config.grid.count},
            'system': system,
        }

    @staticmethod
    def dump_normalized(config: MasterConfig, file_path: str) -> None:
        with open(file_path, 'w', encoding='utf-8', newline='\n') as f:
            yaml.safe_dump(ConfigLoader.to_normalized_dict(config), f, sort_keys=True, default_flow_style=None)
