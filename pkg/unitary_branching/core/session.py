"""Per-level holder of enumerated tables shared by every verification."""

import threading
from typing import Dict, Optional, Tuple

from unitary_branching.algebra.chars import TorusData
from unitary_branching.algebra.group import (
    ConjClasses,
    SubgroupTable,
    build_subgroup,
    enumerate_K,
    index_formula_check,
    k_generators,
    named_subgroup,
    predicted_order,
    subgroup_label,
)
from unitary_branching.algebra.ring import RingCtx, ring_make
from unitary_branching.core.errors import BudgetExceeded
from unitary_branching.storage.cache import GroupCache
from unitary_branching.utils.logger import get_logger

logger = get_logger("core.session")

SUMMARY_SUBGROUPS = ('Borel', 'Torus0', 'SplitTorus0', 'Center', 'UnipotentK', 'ZU')


class Session:
    """
    Lazily built tables for one ring O_E/p^N.

    K/K_N, its conjugacy classes, the torus data and named subgroups are built
    on first use under a lock and reused afterwards. When a cache is attached,
    K and its classes are read from and written to it.
    """

    def __init__(
        self,
        ctx: RingCtx,
        budget: int = 2_000_000,
        cache: Optional[GroupCache] = None,
    ):
        self.ctx = ctx
        self.budget = budget
        self.cache = cache
        self._lock = threading.RLock()
        self._K: Optional[SubgroupTable] = None
        self._torus: Optional[TorusData] = None
        self._subgroups: Dict[str, SubgroupTable] = {}

    def __repr__(self) -> str:
        return f"Session(p={self.ctx.p}, epsilon={self.ctx.eps}, N={self.ctx.N})"

    def fits_budget(self) -> bool:
        return predicted_order(self.ctx) <= self.budget

    @property
    def K(self) -> SubgroupTable:
        """
        The enumerated K/K_N.

        Raises:
            BudgetExceeded: |K/K_N| is above the session budget
        """
        with self._lock:
            if self._K is None:
                if not self.fits_budget():
                    raise BudgetExceeded(
                        f"|K/K_{self.ctx.N}| = {predicted_order(self.ctx)} at p={self.ctx.p} "
                        f"exceeds budget {self.budget}"
                    )
                table = None
                if self.cache is not None:
                    table = self.cache.load(self.ctx, 'K', generators=k_generators(self.ctx))
                if table is None:
                    table = enumerate_K(self.ctx, self.budget)
                    if self.cache is not None:
                        self.cache.save(table)
                self._K = table
            return self._K

    def classes(self) -> ConjClasses:
        """Conjugacy classes of K/K_N, written back to the cache when first computed."""
        with self._lock:
            K = self.K
            fresh = K.classes_computed is None
            classes = K.conjugacy_classes()
            if fresh and self.cache is not None:
                self.cache.save_classes(K, classes)
            return classes

    @property
    def torus(self) -> TorusData:
        with self._lock:
            if self._torus is None:
                self._torus = TorusData(self.ctx)
            return self._torus

    def subgroup(self, name: str, **params) -> SubgroupTable:
        """
        Named subgroup of K/K_N.

        Carved out of the enumerated K when it fits the budget, otherwise built
        by generator closure.
        """
        label = subgroup_label(name, **params)
        with self._lock:
            if label not in self._subgroups:
                if self.fits_budget():
                    table = named_subgroup(self.K, name, **params)
                else:
                    logger.debug(f"{label}: building by closure at N={self.ctx.N}")
                    table = build_subgroup(self.ctx, name, self.budget, **params)
                self._subgroups[label] = table
            return self._subgroups[label]

    def summary(self) -> Dict:
        """Orders of K/K_m, named subgroups, class count and index formulas."""
        K = self.K
        orders = {}
        for m in range(1, self.ctx.N + 1):
            orders[f"K/K_{m}"] = K.order // self.subgroup('Filtration', m=m).order
        named = {name: self.subgroup(name).order for name in SUMMARY_SUBGROUPS}
        indices = index_formula_check(K)
        return {
            'kind': 'summary',
            'p': self.ctx.p,
            'epsilon': self.ctx.eps,
            'N': self.ctx.N,
            'order': K.order,
            'quotient_orders': orders,
            'subgroup_orders': named,
            'class_count': self.classes().count,
            'borel_indices': indices['borel_indices'],
            'level_one_order': indices['level_one_order'],
            'level_one_formula_matches': (
                'q(q-1)(q+1)^2'
                if indices['level_one_order'] == indices['order_q_qminus1_qplus1_sq']
                else 'q(q+1)(q-1)^2'
                if indices['level_one_order'] == indices['order_q_qplus1_qminus1_sq']
                else 'neither'
            ),
        }


class SessionPool:
    """One ``Session`` per (p, epsilon, N), shared across threads."""

    def __init__(self, budget: int = 2_000_000, cache: Optional[GroupCache] = None):
        self.budget = budget
        self.cache = cache
        self._lock = threading.Lock()
        self._sessions: Dict[Tuple[int, int, int], Session] = {}

    def get(self, p: int, epsilon: Optional[int] = None, N: int = 1) -> Session:
        ctx = ring_make(p, epsilon, N)
        key = (ctx.p, ctx.epsilon, ctx.N)
        with self._lock:
            if key not in self._sessions:
                self._sessions[key] = Session(ctx, self.budget, self.cache)
            return self._sessions[key]

    def for_ctx(self, ctx: RingCtx) -> Session:
        return self.get(ctx.p, ctx.epsilon, ctx.N)

    def __len__(self) -> int:
        return len(self._sessions)
