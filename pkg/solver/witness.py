from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterator, List, Tuple

from logic.normal_form import Block, Conj, Disj, NormalFormSentence, alpha_key
from solver.propositional import subsets_by_cardinality


@dataclass(frozen=True)
class WitnessSet:
    """见证集 F：取真时经典地迫使整棵布尔树为真的叶子集合"""

    leaves: Tuple[Block, ...]

    def __len__(self) -> int:
        return len(self.leaves)

    def texts(self) -> List[str]:
        return [leaf.text() for leaf in self.leaves]


def distinct_leaves(nf: NormalFormSentence) -> List[Block]:
    """按出现顺序去重（α-等价的叶子只保留第一个）"""
    seen: Dict[Block, Block] = {}
    for leaf in nf.leaves():
        seen.setdefault(alpha_key(leaf), leaf)
    return list(seen.values())


def _tree_holds(tree, true_keys: FrozenSet[Block]) -> bool:
    if isinstance(tree, Conj):
        return _tree_holds(tree.left, true_keys) and _tree_holds(tree.right, true_keys)
    if isinstance(tree, Disj):
        return _tree_holds(tree.left, true_keys) or _tree_holds(tree.right, true_keys)
    return alpha_key(tree) in true_keys


def witnesses(nf: NormalFormSentence, minimal_only: bool = False) -> Iterator[WitnessSet]:
    """
    按基数不减的顺序枚举全部见证集

    Args:
        nf: 范式句子
        minimal_only: 为真时只给出极小见证集

    Returns:
        见证集流
    """
    leaves = distinct_leaves(nf)
    keys = {alpha_key(leaf): leaf for leaf in leaves}
    found: List[FrozenSet[Block]] = []
    for subset in subsets_by_cardinality(list(keys), lambda chosen: _tree_holds(nf.tree, chosen)):
        if minimal_only and any(previous <= subset for previous in found):
            continue
        found.append(subset)
        yield WitnessSet(tuple(keys[k] for k in keys if k in subset))
