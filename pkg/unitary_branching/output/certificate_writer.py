"""Certificate writer for JSON-lines output."""

import json
import math
import os
import tempfile
from pathlib import Path
from typing import Any, Dict, Iterable, Optional

import numpy as np

from unitary_branching.utils.logger import get_logger

logger = get_logger("output.certificate_writer")

DIGITS = 12


def normalize(value: Any) -> Any:
    """
    Turn a record into plain JSON types.

    Complex numbers become [re, im] and floats are rounded to 12 digits, so
    identical inputs serialize to identical bytes.
    """
    if isinstance(value, dict):
        return {str(k): normalize(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [normalize(v) for v in value]
    if isinstance(value, np.ndarray):
        return [normalize(v) for v in value.tolist()]
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (complex, np.complexfloating)):
        return [_round(value.real), _round(value.imag)]
    if isinstance(value, (float, np.floating)):
        return _round(float(value))
    if value is None or isinstance(value, str):
        return value
    return str(value)


def _round(x: float) -> Optional[float]:
    if math.isinf(x) or math.isnan(x):
        return None
    rounded = round(float(x), DIGITS)
    return 0.0 if rounded == 0 else rounded


class CertificateWriter:
    """
    Write certificate records as JSON lines.

    Handles:
    - File naming from the run parameters
    - schema_version on every record
    - Atomic replacement of the target file
    """

    def __init__(self, config):
        self.config = config
        self.output_dir = Path(config.paths.output_dir).expanduser()
        self.schema_version = int(config.output.get('schema_version', 1))

    def filename(self, command: str, p: int, N: int) -> str:
        pattern = self.config.output.get('filename_pattern', '{command}-p{p}-N{N}.jsonl')
        return pattern.format(command=command, p=p, N=N)

    def serialize(self, record: Dict[str, Any]) -> str:
        payload = dict(record)
        payload['schema_version'] = self.schema_version
        return json.dumps(normalize(payload), sort_keys=True, separators=(',', ':'))

    def write(
        self,
        records: Iterable[Dict[str, Any]],
        name: str,
        output_path: Optional[Path] = None,
    ) -> Path:
        """
        Write records to a file, one JSON object per line.

        Args:
            records: Record dicts (decomposition, claim or summary)
            name: File name under the output directory
            output_path: Explicit target, overriding the output directory

        Returns:
            Path to written file
        """
        path = Path(output_path) if output_path else self.output_dir / name
        path.parent.mkdir(parents=True, exist_ok=True)
        lines = [self.serialize(r) for r in records]

        fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix='.tmp')
        try:
            with os.fdopen(fd, 'w') as f:
                for line in lines:
                    f.write(line + '\n')
            os.replace(tmp, path)
        except Exception:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise

        logger.info(f"Wrote {len(lines)} record(s) to {path}")
        return path
