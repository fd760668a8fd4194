import logging
from typing import Hashable, List, Optional, Sequence, Set, Tuple, Union

from pysat.formula import IDPool
from pysat.solvers import Solver

from utils.config import get_settings

logger = logging.getLogger(__name__)

# 命题树节点：("atom", key) / ("not", node) / ("and", [nodes]) / ("or", [nodes]) / ("const", bool)
Node = Tuple[str, Union[Hashable, "Node", Sequence["Node"], bool]]


def atom(key: Hashable) -> Node:
    return ("atom", key)


def negate(node: Node) -> Node:
    return ("not", node)


def conjunction(nodes: Sequence[Node]) -> Node:
    return ("and", list(nodes))


def disjunction(nodes: Sequence[Node]) -> Node:
    return ("or", list(nodes))


class CnfBuilder:
    """Tseitin 编码：把命题树转换为 CNF 并交给 pysat 求解"""

    def __init__(self):
        self.pool = IDPool()
        self.clauses: List[List[int]] = []
        self._fresh = 0
        self._true: Optional[int] = None

    def variable(self, key: Hashable) -> int:
        return self.pool.id(("atom", key))

    def _auxiliary(self) -> int:
        self._fresh += 1
        return self.pool.id(("aux", self._fresh))

    def _constant(self, value: bool) -> int:
        if self._true is None:
            self._true = self._auxiliary()
            self.clauses.append([self._true])
        return self._true if value else -self._true

    def encode(self, node: Node) -> int:
        """
        为命题树返回一个与之等价的文字，同时追加定义子句

        Args:
            node: 命题树

        Returns:
            pysat 文字
        """
        kind, payload = node
        if kind == "atom":
            return self.variable(payload)
        if kind == "const":
            return self._constant(bool(payload))
        if kind == "not":
            return -self.encode(payload)
        children = [self.encode(child) for child in payload]
        if not children:
            return self._constant(kind == "and")
        if len(children) == 1:
            return children[0]
        gate = self._auxiliary()
        if kind == "and":
            for child in children:
                self.clauses.append([-gate, child])
            self.clauses.append([gate] + [-child for child in children])
        else:
            self.clauses.append([-gate] + children)
            for child in children:
                self.clauses.append([gate, -child])
        return gate

    def require(self, node: Node) -> None:
        self.clauses.append([self.encode(node)])

    def solve(self, solver_name: Optional[str] = None) -> Optional[Set[Hashable]]:
        """
        求解当前子句集

        Args:
            solver_name: pysat 求解器名称，默认读取 SAT_SOLVER

        Returns:
            可满足时返回取真的原子键集合，否则返回 None
        """
        name = solver_name or get_settings().sat_solver
        logger.debug("solving %d clauses over %d variables with %s", len(self.clauses), self.pool.top, name)
        with Solver(name=name, bootstrap_with=self.clauses) as solver:
            if not solver.solve():
                return None
            model = solver.get_model()
        true_keys = set()
        for literal in model:
            if literal > 0:
                obj = self.pool.obj(literal)
                if obj is not None and obj[0] == "atom":
                    true_keys.add(obj[1])
        return true_keys
