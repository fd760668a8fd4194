import logging
from typing import Dict, Optional

from logic.normal_form import Block, Conj, Disj, NormalFormSentence
from model.signature import LanguageSignature
from model.structure import RelationalStructure, all_structures, canonical_domain, count_atoms
from semantics.evaluator import holds
from solver.model_finder import BaseModelFinder
from utils.errors import ResourceLimitError

logger = logging.getLogger(__name__)


class EnumeratingModelFinder(BaseModelFinder):
    """按规范顺序枚举全部解释，逐个叶子块检查；只适合很小的签名与阶"""

    def _tree_holds(self, tree, structure: RelationalStructure, cache: Dict[Block, bool]) -> bool:
        if isinstance(tree, Conj):
            return self._tree_holds(tree.left, structure, cache) and self._tree_holds(tree.right, structure, cache)
        if isinstance(tree, Disj):
            return self._tree_holds(tree.left, structure, cache) or self._tree_holds(tree.right, structure, cache)
        # 短路求值：一个叶子为假即可剪掉该解释
        if tree not in cache:
            cache[tree] = holds(structure, tree.to_formula())
        return cache[tree]

    def find_of_order(
        self,
        nf: NormalFormSentence,
        signature: LanguageSignature,
        order: int,
    ) -> Optional[RelationalStructure]:
        count = 2 ** count_atoms(signature, order)
        if count > self.cap:
            logger.warning("enumeration refused at order %d: %d interpretations", order, count)
            raise ResourceLimitError(f"interpretations at order {order}", count, self.cap)
        for structure in all_structures(signature, canonical_domain(order)):
            if self._tree_holds(nf.tree, structure, {}):
                return structure
        return None
