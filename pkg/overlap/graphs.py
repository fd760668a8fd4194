import logging
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple, Union

import graphviz
import networkx as nx

from logic.normal_form import BindPrefix, Block, DerivedRelation, QuantPrefix
from skolem.schema import Schema
from utils.errors import CouplingError, FragmentError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ExtendedArgument:
    """扩展论元 e = (σ, a)"""

    schema: Schema
    argument: str

    @property
    def is_existential(self) -> bool:
        return self.argument in self.schema.existential_arguments


Leaf = Union[Block, Tuple[QuantPrefix, BindPrefix, DerivedRelation]]


def extract_schema(leaf: Leaf) -> Schema:
    """
    从单绑定叶子 (℘, ♭, r̂) 中取出模式 (℘, ♭)

    Args:
        leaf: 单绑定块或 (前缀, 绑定前缀, 派生关系) 三元组

    Returns:
        模式，var(℘) ≠ var(♭) 时抛出 variable-set mismatch
    """
    if isinstance(leaf, Block):
        if not leaf.is_one_binding:
            raise FragmentError(f"fragment not OB: block {leaf.text()} has several binding forms")
        return Schema(leaf.prefix, leaf.body.binding)
    prefix, binding, _ = leaf
    return Schema(prefix, binding)


def _ordered_schemas(schemas: Iterable[Schema]) -> Tuple[Schema, ...]:
    return tuple(dict.fromkeys(schemas))


def _check_arguments(schemas: Sequence[Schema], arguments: FrozenSet[str]) -> None:
    argument_sets = {schema.arguments for schema in schemas}
    if len(argument_sets) > 1:
        raise CouplingError("argument-set mismatch: schemas do not share one argument set")
    if argument_sets and not arguments <= next(iter(argument_sets)):
        raise CouplingError(f"argument-set mismatch: {sorted(arguments)} not inside the schema arguments")


class _SchemaGraph:
    """两种图共用的顶点编号与标签"""

    def __init__(self, schemas: Iterable[Schema], arguments: Iterable[str]):
        self.schemas = _ordered_schemas(schemas)
        self.arguments = tuple(sorted(set(arguments)))
        _check_arguments(self.schemas, frozenset(self.arguments))
        self._index: Dict[Schema, int] = {schema: i + 1 for i, schema in enumerate(self.schemas)}
        self.vertices: Tuple[ExtendedArgument, ...] = tuple(
            ExtendedArgument(schema, argument) for schema in self.schemas for argument in self.arguments
        )

    def label(self, vertex: ExtendedArgument) -> str:
        return f"s{self._index[vertex.schema]}.{vertex.argument}"

    def sort_key(self, vertex: ExtendedArgument) -> Tuple[int, str]:
        return self._index[vertex.schema], vertex.argument


class CollapsingGraph(_SchemaGraph):
    """坍缩图：≈ 是基本边集的等价闭包，保存为划分"""

    def __init__(self, schemas: Iterable[Schema], arguments: Iterable[str]):
        super().__init__(schemas, arguments)
        self.graph = nx.Graph()
        self.graph.add_nodes_from(self.vertices)
        for i, first in enumerate(self.vertices):
            for second in self.vertices[i + 1:]:
                if first.schema == second.schema:
                    if first.schema.collapses(first.argument, second.argument):
                        self.graph.add_edge(first, second)
                elif first.argument == second.argument:
                    self.graph.add_edge(first, second)
        classes = [frozenset(component) for component in nx.connected_components(self.graph)]
        self.classes: Tuple[FrozenSet[ExtendedArgument], ...] = tuple(
            sorted(classes, key=lambda c: min(self.sort_key(v) for v in c))
        )
        self._class_of = {vertex: cls for cls in self.classes for vertex in cls}

    def class_of(self, vertex: ExtendedArgument) -> FrozenSet[ExtendedArgument]:
        return self._class_of[vertex]

    def equivalent(self, first: ExtendedArgument, second: ExtendedArgument) -> bool:
        return second in self._class_of[first]

    def base_edges(self) -> List[Tuple[ExtendedArgument, ExtendedArgument]]:
        edges = [tuple(sorted(edge, key=self.sort_key)) for edge in self.graph.edges]
        return sorted(edges, key=lambda e: (self.sort_key(e[0]), self.sort_key(e[1])))


class DependenceGraph(_SchemaGraph):
    """依赖图：e1 → e3 当且仅当存在 e2 使 e1 ≈ e2 且 a(e2) ⇝σ a(e3)"""

    def __init__(self, schemas: Iterable[Schema], arguments: Iterable[str]):
        super().__init__(schemas, arguments)
        self.collapsing = CollapsingGraph(self.schemas, self.arguments)
        self.graph = nx.DiGraph()
        self.graph.add_nodes_from(self.vertices)
        for source in self.vertices:
            for middle in sorted(self.collapsing.class_of(source), key=self.sort_key):
                for argument in self.arguments:
                    if middle.schema.depends(middle.argument, argument):
                        self.graph.add_edge(source, ExtendedArgument(middle.schema, argument))

    def edges(self) -> List[Tuple[ExtendedArgument, ExtendedArgument]]:
        return sorted(self.graph.edges, key=lambda e: (self.sort_key(e[0]), self.sort_key(e[1])))

    def has_edge(self, source: ExtendedArgument, target: ExtendedArgument) -> bool:
        return self.graph.has_edge(source, target)


def build_collapsing_graph(schemas: Iterable[Schema], arguments: Iterable[str]) -> CollapsingGraph:
    return CollapsingGraph(schemas, arguments)


def build_dependence_graph(schemas: Iterable[Schema], arguments: Iterable[str]) -> DependenceGraph:
    return DependenceGraph(schemas, arguments)


def is_conflicting(collapsing: CollapsingGraph) -> bool:
    """存在两个不同的存在扩展论元 e1 ≈ e2，且它们不在同一模式内 ≈σ 相关"""
    for cls in collapsing.classes:
        existentials = sorted((v for v in cls if v.is_existential), key=collapsing.sort_key)
        for i, first in enumerate(existentials):
            for second in existentials[i + 1:]:
                if first.schema != second.schema:
                    return True
                if not first.schema.collapses(first.argument, second.argument):
                    return True
    return False


def is_acyclic(dependence: DependenceGraph) -> bool:
    # 自环也算环
    return nx.is_directed_acyclic_graph(dependence.graph)


def dependence_cycle(dependence: DependenceGraph) -> Optional[List[ExtendedArgument]]:
    """返回依赖图中的一个环（顶点序列），无环时返回 None"""
    try:
        edges = nx.find_cycle(dependence.graph)
    except nx.NetworkXNoCycle:
        return None
    return [source for source, _ in edges]


def is_overlapping(schemas: Iterable[Schema], arguments: Iterable[str]) -> bool:
    """
    S′ 在 A′ 上重叠：坍缩图不冲突且依赖图无环

    Args:
        schemas: 模式集合 S′
        arguments: 论元集合 A′

    Returns:
        真值
    """
    dependence = DependenceGraph(schemas, arguments)
    if is_conflicting(dependence.collapsing):
        logger.debug("schemas conflict over %s", dependence.arguments)
        return False
    return is_acyclic(dependence)


def export_dot(graph: Union[CollapsingGraph, DependenceGraph]) -> str:
    """
    把坍缩图或依赖图渲染成 DOT 文本，顶点标签为 s<i>.<arg>

    Args:
        graph: 坍缩图（无向，每个等价类一个 cluster）或依赖图（有向）

    Returns:
        确定性的 DOT 文本
    """
    if isinstance(graph, CollapsingGraph):
        dot = graphviz.Graph(name="collapsing")
        for k, cls in enumerate(graph.classes):
            with dot.subgraph(name=f"cluster_{k}") as cluster:
                for vertex in sorted(cls, key=graph.sort_key):
                    cluster.node(graph.label(vertex))
        for first, second in graph.base_edges():
            dot.edge(graph.label(first), graph.label(second))
        return dot.source
    dot = graphviz.Digraph(name="dependence")
    for vertex in graph.vertices:
        dot.node(graph.label(vertex))
    for source, target in graph.edges():
        dot.edge(graph.label(source), graph.label(target))
    return dot.source
