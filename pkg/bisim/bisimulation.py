import itertools
import logging
from dataclasses import dataclass
from typing import Dict, FrozenSet, List, Set, Tuple

from model.assignment import Assignment
from model.structure import RelationalStructure, all_tuple_functions
from utils.errors import BisimulationError

logger = logging.getLogger(__name__)

Pair = Tuple[Assignment, Assignment]


def _subsets(items) -> List[FrozenSet[str]]:
    """全部子集，按基数从大到小，同基数按字典序"""
    ordered = sorted(items)
    return [
        frozenset(chosen)
        for size in range(len(ordered), -1, -1)
        for chosen in itertools.combinations(ordered, size)
    ]


@dataclass(frozen=True)
class BisimRelation:
    """单绑定互模拟 Z：按论元子集 A 分组的同定义域赋值对"""

    first: RelationalStructure
    second: RelationalStructure
    pairs: Dict[FrozenSet[str], FrozenSet[Pair]]

    def __contains__(self, pair: Pair) -> bool:
        return pair in self.pairs.get(pair[0].domain, frozenset())

    def partners_of(self, chi: Assignment, side: int = 1) -> List[Assignment]:
        """与 chi 相关的另一侧赋值，side 为 chi 所在的结构（1 或 2）"""
        related = self.pairs.get(chi.domain, frozenset())
        if side == 1:
            return sorted(chi2 for chi1, chi2 in related if chi1 == chi)
        return sorted(chi1 for chi1, chi2 in related if chi2 == chi)

    def unmatched(self) -> List[Tuple[int, Assignment]]:
        """没有伙伴的赋值 (结构编号, 赋值)，为空表示双向完全"""
        missing = []
        for arguments, related in self.pairs.items():
            left = {chi1 for chi1, _ in related}
            right = {chi2 for _, chi2 in related}
            missing.extend((1, chi) for chi in all_tuple_functions(arguments, self.first.domain) if chi not in left)
            missing.extend((2, chi) for chi in all_tuple_functions(arguments, self.second.domain) if chi not in right)
        return missing

    @property
    def is_total(self) -> bool:
        return not self.unmatched()

    def size(self) -> int:
        return sum(len(related) for related in self.pairs.values())


def _agrees_on_relations(first: RelationalStructure, second: RelationalStructure, pair: Pair) -> bool:
    chi1, chi2 = pair
    for relation in first.signature.relations_over(chi1.domain):
        if first.contains(relation, chi1) != second.contains(relation, chi2):
            return False
    return True


def _forth_and_back(
    first: RelationalStructure,
    second: RelationalStructure,
    pair: Pair,
    extension: FrozenSet[str],
    wider: Set[Pair],
) -> bool:
    chi1, chi2 = pair
    for d1 in first.domain:
        if not any((chi1.extend(extension, d1), chi2.extend(extension, d2)) in wider for d2 in second.domain):
            return False
    for d2 in second.domain:
        if not any((chi1.extend(extension, d1), chi2.extend(extension, d2)) in wider for d1 in first.domain):
            return False
    return True


def greatest_bisimulation(first: RelationalStructure, second: RelationalStructure) -> BisimRelation:
    """
    计算满足前进/后退条件与关系一致条件的最大关系

    从全部同定义域赋值对出发反复删除违反条件的对，直到不动点。

    Args:
        first: 结构 R1
        second: 结构 R2，与 R1 同签名

    Returns:
        最大互模拟（不一定完全）
    """
    if first.signature != second.signature:
        raise BisimulationError("signature mismatch: structures are over different signatures")
    arguments = first.signature.arguments
    subsets = _subsets(arguments)
    pairs: Dict[FrozenSet[str], Set[Pair]] = {}
    for subset in subsets:
        candidates = itertools.product(
            all_tuple_functions(subset, first.domain),
            all_tuple_functions(subset, second.domain),
        )
        pairs[subset] = {pair for pair in candidates if _agrees_on_relations(first, second, pair)}
    rounds = 0
    changed = True
    while changed:
        changed = False
        rounds += 1
        # 扩展只会到更大的论元集合，按基数从大到小处理
        for subset in subsets:
            extensions = [e for e in _subsets(set(arguments) - subset) if e]
            removed = {
                pair
                for pair in pairs[subset]
                if not all(_forth_and_back(first, second, pair, e, pairs[subset | e]) for e in extensions)
            }
            if removed:
                changed = True
                pairs[subset] -= removed
        logger.debug("bisimulation round %d: %d pairs", rounds, sum(len(p) for p in pairs.values()))
    return BisimRelation(first, second, {subset: frozenset(related) for subset, related in pairs.items()})


def are_bisimilar(first: RelationalStructure, second: RelationalStructure) -> bool:
    """两个结构是否单绑定互模拟（最大互模拟双向完全）"""
    relation = greatest_bisimulation(first, second)
    missing = relation.unmatched()
    if missing:
        side, chi = missing[0]
        logger.info("not bisimilar: assignment %r of structure %d has no partner", chi, side)
    return not missing
