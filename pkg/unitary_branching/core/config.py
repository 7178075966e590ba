"""Configuration management."""

import os
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, Optional

import yaml
from dotenv import load_dotenv

from unitary_branching.core.errors import InvalidParameter

CACHE_ENV_VAR = 'UNITARY_BRANCHING_CACHE'


class DotDict(dict):
    """Dict with dot notation access."""

    def __getattr__(self, key):
        try:
            value = self[key]
            if isinstance(value, dict):
                return DotDict(value)
            return value
        except KeyError:
            raise AttributeError(f"No attribute '{key}'")

    def __setattr__(self, key, value):
        self[key] = value

    def get(self, key, default=None):
        try:
            return self[key]
        except KeyError:
            return default


@dataclass
class Config:
    """Unitary-branching configuration."""

    paths: DotDict
    field: DotDict
    enumeration: DotDict
    tolerances: DotDict
    verify: DotDict
    output: DotDict
    dev: DotDict

    @classmethod
    def load(cls, config_path: Optional[Path] = None) -> 'Config':
        """
        Load configuration from YAML file.

        Missing sections fall back to the built-in defaults, and the
        UNITARY_BRANCHING_CACHE environment variable overrides the cache root.

        Args:
            config_path: Path to config file (default: ~/.unitary-branching/config.yaml)

        Returns:
            Config object
        """
        if config_path is None:
            config_path = Path.home() / '.unitary-branching' / 'config.yaml'
        else:
            config_path = Path(config_path)

        env_path = config_path.parent / '.env'
        if env_path.exists():
            load_dotenv(env_path)

        config_data = cls._get_default_config()
        if config_path.exists():
            with open(config_path) as f:
                loaded = yaml.safe_load(f) or {}
            for section, values in loaded.items():
                if isinstance(values, dict) and isinstance(config_data.get(section), dict):
                    config_data[section].update(values)
                else:
                    config_data[section] = values

        cache_override = os.getenv(CACHE_ENV_VAR)
        if cache_override:
            config_data['paths']['cache_dir'] = cache_override

        return cls(
            paths=DotDict(config_data.get('paths', {})),
            field=DotDict(config_data.get('field', {})),
            enumeration=DotDict(config_data.get('enumeration', {})),
            tolerances=DotDict(config_data.get('tolerances', {})),
            verify=DotDict(config_data.get('verify', {})),
            output=DotDict(config_data.get('output', {})),
            dev=DotDict(config_data.get('dev', {}))
        )

    @classmethod
    def load_default(cls) -> 'Config':
        """Load default configuration."""
        return cls.load()

    @classmethod
    def defaults(cls) -> 'Config':
        """Built-in defaults, ignoring any file or environment override."""
        data = cls._get_default_config()
        return cls(**{section: DotDict(data[section]) for section in cls.__annotations__})

    @staticmethod
    def _get_default_config() -> Dict[str, Any]:
        """Get default configuration."""
        return {
            'version': '1.0',
            'paths': {
                'data_dir': '~/.unitary-branching',
                'cache_dir': '~/.unitary-branching/cache',
                'output_dir': '~/.unitary-branching/certificates',
                'logs_dir': '~/.unitary-branching/logs',
            },
            'field': {
                'p': 3,
                'epsilon': None,
                'N': 2,
            },
            'enumeration': {
                'budget': 2_000_000,
                'use_cache': True,
            },
            'tolerances': {
                'equality': 1e-9,
                'integrality': 1e-6,
            },
            'verify': {
                'workers': 2,
                'hensel_trials': 100,
                'seed': 0,
                'suites': [
                    'level-one',
                    'double-cosets',
                    'intertwining',
                    'nilpotent-reps',
                    'branching',
                    'normalizers',
                    'orbits',
                    'hensel',
                    'key-identification',
                    'near-identity',
                ],
            },
            'output': {
                'schema_version': 1,
                'filename_pattern': '{command}-p{p}-N{N}.jsonl',
                'include_values': False,
            },
            'dev': {
                'verbose': False,
            },
        }

    def to_yaml(self) -> str:
        """Convert config to YAML string."""
        data = {
            'paths': dict(self.paths),
            'field': dict(self.field),
            'enumeration': dict(self.enumeration),
            'tolerances': dict(self.tolerances),
            'verify': dict(self.verify),
            'output': dict(self.output),
            'dev': dict(self.dev),
        }
        return yaml.dump(data, default_flow_style=False, sort_keys=False)


@dataclass(frozen=True)
class RunConfig:
    """Parameters of one CLI invocation, validated before any enumeration."""

    p: int
    epsilon: Optional[int]
    N: int
    command: str
    budget: int
    cache_dir: Optional[Path]
    output_dir: Path
    use_cache: bool = True
    options: Optional[Dict[str, Any]] = None

    @classmethod
    def from_config(
        cls,
        config: Config,
        command: str,
        p: Optional[int] = None,
        epsilon: Optional[int] = None,
        N: Optional[int] = None,
        budget: Optional[int] = None,
        cache_dir: Optional[Path] = None,
        output_dir: Optional[Path] = None,
        **options,
    ) -> 'RunConfig':
        """Merge command-line flags over the loaded configuration and validate."""
        run = cls(
            p=int(p if p is not None else config.field.get('p', 3)),
            epsilon=epsilon if epsilon is not None else config.field.get('epsilon'),
            N=int(N if N is not None else config.field.get('N', 2)),
            command=command,
            budget=int(budget if budget is not None
                       else config.enumeration.get('budget', 2_000_000)),
            cache_dir=Path(cache_dir or config.paths.cache_dir).expanduser(),
            output_dir=Path(output_dir or config.paths.output_dir).expanduser(),
            use_cache=bool(config.enumeration.get('use_cache', True)),
            options=options or {},
        )
        run.validate()
        return run

    def validate(self) -> None:
        """Check ring parameters and the budget; raises a ParameterError subclass."""
        from unitary_branching.algebra.ring import ring_make

        ring_make(self.p, self.epsilon, self.N)
        if self.budget <= 0:
            raise InvalidParameter(f"budget must be positive, got {self.budget}")
