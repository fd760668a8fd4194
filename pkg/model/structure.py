import itertools
import sys
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, Iterator, List, Mapping, Sequence, Tuple

from model.assignment import Assignment, TupleFunction
from model.signature import SYMBOL_PATTERN, LanguageSignature


@dataclass(frozen=True)
class RelationalStructure:
    """有限关系结构：论域 D 与每个关系的元组函数集合"""

    signature: LanguageSignature
    domain: Tuple[str, ...]
    relations: Dict[str, FrozenSet[TupleFunction]]

    @classmethod
    def create(
        cls,
        signature: LanguageSignature,
        domain: Iterable[str],
        relations: Mapping[str, Iterable[Mapping[str, str]]],
    ) -> "RelationalStructure":
        """
        构造结构；未出现的关系解释为空集

        Args:
            signature: 所属签名
            domain: 论域元素名
            relations: 关系名到元组（论元→元素的字典或 Assignment）列表的映射

        Returns:
            结构实例（未校验，校验见 validate_structure）
        """
        elements = tuple(sorted({sys.intern(d) for d in domain}))
        interpretation = {r: frozenset() for r in signature.relations}
        for relation, tuples in relations.items():
            interpretation[relation] = frozenset(
                t if isinstance(t, Assignment) else Assignment(t) for t in tuples
            )
        return cls(signature=signature, domain=elements, relations=interpretation)

    @property
    def order(self) -> int:
        return len(self.domain)

    def interpretation(self, relation: str) -> FrozenSet[TupleFunction]:
        return self.relations.get(relation, frozenset())

    def contains(self, relation: str, tuple_function: TupleFunction) -> bool:
        return tuple_function in self.relations.get(relation, frozenset())


def canonical_domain(order: int) -> Tuple[str, ...]:
    """有界搜索使用的规范论域 e0, e1, …"""
    return tuple(sys.intern(f"e{i}") for i in range(order))


def all_tuple_functions(arguments: Iterable[str], domain: Sequence[str]) -> Iterator[Assignment]:
    """
    按确定顺序枚举 A → D 的全部函数

    Args:
        arguments: 论元集合 A
        domain: 论域 D

    Returns:
        赋值迭代器，共 |D|^|A| 个
    """
    ordered = sorted(arguments)
    for values in itertools.product(domain, repeat=len(ordered)):
        yield Assignment(dict(zip(ordered, values)))


def all_structures(signature: LanguageSignature, domain: Sequence[str]) -> Iterator[RelationalStructure]:
    """
    按规范顺序枚举论域上的全部结构（共 2^原子数 个）

    Args:
        signature: 签名
        domain: 论域

    Returns:
        结构迭代器，第一个是所有关系都为空的结构
    """
    atoms = [(r, t) for r in signature.relations for t in all_tuple_functions(signature.arity(r), domain)]
    for values in itertools.product((False, True), repeat=len(atoms)):
        relations: Dict[str, List[Assignment]] = {}
        for (relation, t), value in zip(atoms, values):
            if value:
                relations.setdefault(relation, []).append(t)
        yield RelationalStructure.create(signature, domain, relations)


def count_atoms(signature: LanguageSignature, order: int) -> int:
    """论域大小为 order 时的基本原子 (r, t) 个数"""
    return sum(order ** len(signature.arity(r)) for r in signature.relations)


def validate_structure(sig: LanguageSignature, structure: RelationalStructure) -> List[str]:
    """
    检查结构相对于签名的全部不变量

    Args:
        sig: 已校验的签名
        structure: 待检查的结构

    Returns:
        违例列表，为空表示通过
    """
    violations = []
    if structure.signature != sig:
        violations.append("structure signature differs from the supplied signature")
    if not structure.domain:
        violations.append("empty domain")
    for element in structure.domain:
        if not SYMBOL_PATTERN.fullmatch(element):
            violations.append(f"{element}: invalid element name")
    elements = set(structure.domain)
    for relation in sig.relations:
        if relation not in structure.relations:
            violations.append(f"{relation}: interpretation missing")
    for relation in sorted(structure.relations):
        if relation not in sig.arg_fun:
            violations.append(f"{relation}: unknown relation")
            continue
        expected = sig.arg_fun[relation]
        for tuple_function in sorted(structure.relations[relation]):
            if tuple_function.domain != expected:
                violations.append(f"{relation}: support mismatch in tuple {tuple_function!r}")
            for arg, value in tuple_function.items():
                if value not in elements:
                    violations.append(f"{relation}: value {value} of {arg} not in domain")
    return violations
