from enum import Enum

from logic.normal_form import BindingForm, BodyTree, Conj, Disj, NormalFormSentence


class FragmentClass(str, Enum):
    """绑定片段，按包含关系 OB ⊂ CB、OB ⊂ DB、CB ⊂ BB、DB ⊂ BB 排序"""

    OB = "OB"
    CB = "CB"
    DB = "DB"
    BB = "BB"

    def join(self, other: "FragmentClass") -> "FragmentClass":
        """同时包含两个片段的最小片段"""
        if self == other or other == FragmentClass.OB:
            return self
        if self == FragmentClass.OB:
            return other
        return FragmentClass.BB

    def includes(self, other: "FragmentClass") -> bool:
        return self.join(other) == self


def _connectives(body: BodyTree) -> set:
    if isinstance(body, BindingForm):
        return set()
    return {type(body)} | _connectives(body.left) | _connectives(body.right)


def classify_body(body: BodyTree) -> FragmentClass:
    connectives = _connectives(body)
    if not connectives:
        return FragmentClass.OB
    if connectives == {Conj}:
        return FragmentClass.CB
    if connectives == {Disj}:
        return FragmentClass.DB
    return FragmentClass.BB


def classify_fragment(nf: NormalFormSentence) -> FragmentClass:
    """
    报告包含该句子的最小片段（纯语法判定）

    Args:
        nf: 范式句子

    Returns:
        OB / CB / DB / BB
    """
    result = FragmentClass.OB
    for block in nf.leaves():
        result = result.join(classify_body(block.body))
    return result
