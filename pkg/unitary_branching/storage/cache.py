"""On-disk cache of enumerated group tables and their conjugacy classes.

One directory per ring (p, epsilon, N); inside it one text file per table
label. Each file starts with a ``#`` header and then lists one element per
line as eight decimal residues. Class ids go to a sibling ``.classes`` file,
one id per element line.
"""

import os
import re
import shutil
import tempfile
from pathlib import Path
from typing import Dict, List, Optional

import numpy as np

from unitary_branching.algebra.group import ConjClasses, SubgroupTable
from unitary_branching.algebra.ring import RingCtx
from unitary_branching.core.errors import CacheError
from unitary_branching.utils.logger import get_logger

logger = get_logger("storage.cache")

FORMAT_VERSION = 1
HEADER_PREFIX = 'unitary-branching'


def _safe_label(label: str) -> str:
    return re.sub(r'[^A-Za-z0-9_-]+', '_', label).strip('_') or 'table'


def _parse_header(path: Path) -> Dict[str, str]:
    with open(path) as f:
        first = f.readline()
    if not first.startswith('#'):
        raise CacheError(f"{path}: missing header")
    fields = first.lstrip('#').split()
    if not fields or fields[0] != HEADER_PREFIX:
        raise CacheError(f"{path}: not a unitary-branching cache file")
    header = {}
    for token in fields[1:]:
        key, _, value = token.partition('=')
        header[key] = value
    return header


def _atomic_savetxt(path: Path, rows: np.ndarray, header: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix='.tmp')
    try:
        with os.fdopen(fd, 'w') as f:
            np.savetxt(f, rows, fmt='%d', header=header)
        os.replace(tmp, path)
    except Exception:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


class GroupCache:
    """
    Text-file cache for ``SubgroupTable`` objects.

    Writes go to a temporary file in the target directory and are renamed into
    place, so readers never see a partial file.
    """

    def __init__(self, root: Path):
        self.root = Path(root).expanduser()

    def ring_dir(self, ctx: RingCtx) -> Path:
        return self.root / f"p{ctx.p}-e{ctx.eps}-N{ctx.N}"

    def path_for(self, ctx: RingCtx, label: str) -> Path:
        return self.ring_dir(ctx) / f"{_safe_label(label)}.txt"

    def _header(self, ctx: RingCtx, label: str, order: int, kind: str) -> str:
        return (
            f"{HEADER_PREFIX} format={FORMAT_VERSION} kind={kind} p={ctx.p} "
            f"epsilon={ctx.eps} N={ctx.N} label={_safe_label(label)} order={order}"
        )

    def _check_header(self, path: Path, ctx: RingCtx, label: str, kind: str) -> Dict[str, str]:
        header = _parse_header(path)
        expected = {
            'format': str(FORMAT_VERSION),
            'kind': kind,
            'p': str(ctx.p),
            'epsilon': str(ctx.eps),
            'N': str(ctx.N),
            'label': _safe_label(label),
        }
        for key, value in expected.items():
            if header.get(key) != value:
                raise CacheError(
                    f"{path}: header {key}={header.get(key)!r} does not match {value!r}"
                )
        return header

    def save(self, table: SubgroupTable) -> Path:
        """Write a table (and its classes, if computed) to the cache."""
        ctx = table.ctx
        path = self.path_for(ctx, table.label)
        _atomic_savetxt(path, table.elements, self._header(ctx, table.label, table.order, 'table'))
        if table.classes_computed is not None:
            self.save_classes(table, table.classes_computed)
        logger.debug(f"Cached {table.label} ({table.order} elements) at {path}")
        return path

    def load(
        self, ctx: RingCtx, label: str, generators: Optional[np.ndarray] = None
    ) -> Optional[SubgroupTable]:
        """
        Load a cached table, or None on a miss.

        Raises:
            CacheError: header does not match the requested ring or label, or
                the element count disagrees with the header
        """
        path = self.path_for(ctx, label)
        if not path.exists():
            logger.debug(f"Cache miss: {label} at p={ctx.p}, N={ctx.N}")
            return None

        header = self._check_header(path, ctx, label, 'table')
        rows = np.loadtxt(path, dtype=np.int64, ndmin=2, comments='#')
        if rows.shape[1] != 8 or len(rows) != int(header.get('order', -1)):
            raise CacheError(f"{path}: expected {header.get('order')} rows of 8 residues")

        table = SubgroupTable(ctx, rows, label, generators=generators)
        classes = self.load_classes(table)
        if classes is not None:
            table.set_classes(classes)
        logger.info(f"Cache hit: {label} ({table.order} elements)")
        return table

    def save_classes(self, table: SubgroupTable, classes: ConjClasses) -> Path:
        path = self.path_for(table.ctx, table.label).with_suffix('.classes')
        header = self._header(table.ctx, table.label, table.order, 'classes')
        _atomic_savetxt(path, classes.class_of.reshape(-1, 1), header)
        return path

    def load_classes(self, table: SubgroupTable) -> Optional[ConjClasses]:
        path = self.path_for(table.ctx, table.label).with_suffix('.classes')
        if not path.exists():
            return None
        self._check_header(path, table.ctx, table.label, 'classes')
        class_of = np.loadtxt(path, dtype=np.int64, ndmin=1, comments='#').reshape(-1)
        if len(class_of) != table.order:
            raise CacheError(f"{path}: {len(class_of)} class ids for {table.order} elements")
        count = int(class_of.max()) + 1 if len(class_of) else 0
        _, first = np.unique(class_of, return_index=True)
        if len(first) != count:
            raise CacheError(f"{path}: class ids are not contiguous")
        return ConjClasses(
            class_of=class_of,
            representatives=first,
            sizes=np.bincount(class_of, minlength=count),
        )

    def entries(self) -> List[Dict]:
        """Summaries of every cached table, sorted by path."""
        if not self.root.exists():
            return []
        result = []
        for path in sorted(self.root.glob('*/*.txt')):
            try:
                header = _parse_header(path)
            except CacheError as e:
                logger.warning(f"Skipping unreadable cache file: {e}")
                continue
            result.append({
                'path': str(path),
                'label': header.get('label'),
                'p': header.get('p'),
                'epsilon': header.get('epsilon'),
                'N': header.get('N'),
                'order': header.get('order'),
                'classes': path.with_suffix('.classes').exists(),
                'bytes': path.stat().st_size,
            })
        return result

    def clear(self) -> int:
        """Remove every cached ring directory; returns the number removed."""
        if not self.root.exists():
            return 0
        removed = 0
        for ring_dir in sorted(self.root.iterdir()):
            if ring_dir.is_dir():
                shutil.rmtree(ring_dir)
                removed += 1
        logger.info(f"Cleared {removed} cached ring(s) under {self.root}")
        return removed
