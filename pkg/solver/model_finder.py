import logging
from abc import ABC, abstractmethod
from typing import Optional

from logic.formula import Rel, subformulas
from logic.normal_form import NormalFormSentence
from model.signature import LanguageSignature
from model.structure import RelationalStructure
from semantics.evaluator import holds
from utils.config import get_settings
from utils.errors import SemanticError

logger = logging.getLogger(__name__)


def signature_of(nf: NormalFormSentence) -> LanguageSignature:
    """只含句子中出现的关系的最小签名"""
    arg_fun = {}
    for node in subformulas(nf.to_formula()):
        if isinstance(node, Rel):
            arg_fun[node.name] = node.arguments
    arguments = set().union(*arg_fun.values())
    return LanguageSignature.create(arguments, arg_fun.keys(), arg_fun)


class BaseModelFinder(ABC):
    """有界模型搜索的基础接口"""

    def __init__(self, cap: Optional[int] = None):
        """
        初始化模型搜索器

        Args:
            cap: 搜索规模上限，默认读取 MODEL_SEARCH_CAP
        """
        self.cap = get_settings().model_search_cap if cap is None else cap

    @abstractmethod
    def find_of_order(
        self,
        nf: NormalFormSentence,
        signature: LanguageSignature,
        order: int,
    ) -> Optional[RelationalStructure]:
        """
        在规范论域 e0…e(order-1) 上寻找模型

        Args:
            nf: 句子
            signature: 结构使用的签名
            order: 论域大小

        Returns:
            模型，不存在时返回 None
        """
        pass

    def search(
        self,
        nf: NormalFormSentence,
        max_order: int,
        signature: Optional[LanguageSignature] = None,
    ) -> Optional[RelationalStructure]:
        """依次尝试阶 1..max_order，每个找到的模型都用 holds 复核"""
        if max_order < 1:
            raise SemanticError("max order must be positive")
        signature = signature or signature_of(nf)
        sentence = nf.to_formula()
        for order in range(1, max_order + 1):
            logger.info("%s: searching models of order %d", type(self).__name__, order)
            structure = self.find_of_order(nf, signature, order)
            if structure is None:
                continue
            if not holds(structure, sentence):
                raise SemanticError(f"model finder returned a structure of order {order} that is not a model")
            return structure
        return None


def make_model_finder(strategy: Optional[str] = None, cap: Optional[int] = None) -> BaseModelFinder:
    """按名称创建模型搜索器：ground 或 enumerate"""
    from solver.enumerating_finder import EnumeratingModelFinder
    from solver.grounded_finder import GroundedModelFinder

    strategy = strategy or get_settings().model_finder
    finders = {"ground": GroundedModelFinder, "enumerate": EnumeratingModelFinder}
    if strategy not in finders:
        raise SemanticError(f"unknown model finder strategy: {strategy}")
    return finders[strategy](cap)


def find_model_bounded(
    nf: NormalFormSentence,
    max_order: int,
    signature: Optional[LanguageSignature] = None,
    strategy: Optional[str] = None,
    cap: Optional[int] = None,
) -> Optional[RelationalStructure]:
    """
    寻找阶不超过 max_order 的模型

    Args:
        nf: 句子（任意片段）
        max_order: 最大阶
        signature: 结构的签名，默认由句子中的关系推出
        strategy: ground（默认）或 enumerate
        cap: 资源上限

    Returns:
        模型或 None
    """
    return make_model_finder(strategy, cap).search(nf, max_order, signature)
