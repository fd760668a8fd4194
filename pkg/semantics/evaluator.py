import logging

from logic.formula import And, Bind, Exists, Forall, Formula, Not, Or, Rel, free_placeholders
from model.assignment import EMPTY_ASSIGNMENT, Assignment
from model.structure import RelationalStructure
from utils.errors import EvaluationError

logger = logging.getLogger(__name__)


def _evaluate(structure: RelationalStructure, chi: Assignment, phi: Formula) -> bool:
    if isinstance(phi, Rel):
        return structure.contains(phi.name, chi.restrict(phi.arguments))
    if isinstance(phi, Not):
        return not _evaluate(structure, chi, phi.child)
    if isinstance(phi, And):
        return _evaluate(structure, chi, phi.left) and _evaluate(structure, chi, phi.right)
    if isinstance(phi, Or):
        return _evaluate(structure, chi, phi.left) or _evaluate(structure, chi, phi.right)
    if isinstance(phi, Exists):
        return any(_evaluate(structure, chi.extend((phi.variable,), d), phi.child) for d in structure.domain)
    if isinstance(phi, Forall):
        return all(_evaluate(structure, chi.extend((phi.variable,), d), phi.child) for d in structure.domain)
    if isinstance(phi, Bind):
        if phi.variable not in chi:
            # free(φ) ⊆ dom(χ) 已检查过，走到这里说明该绑定是空绑定
            raise EvaluationError(
                f"variable unassigned at binding: ({phi.argument}, {phi.variable}); "
                "the binding is vacuous, normalization drops it"
            )
        return _evaluate(structure, chi.extend((phi.argument,), chi[phi.variable]), phi.child)
    raise TypeError(f"not a formula: {phi!r}")


def evaluate(structure: RelationalStructure, chi: Assignment, phi: Formula) -> bool:
    """
    按结构递归计算 R, χ ⊨ φ

    Args:
        structure: 有限关系结构
        chi: 赋值，定义域必须包含 free(φ)
        phi: 公式

    Returns:
        真值
    """
    missing = free_placeholders(phi) - chi.domain
    if missing:
        raise EvaluationError(f"unbound placeholder: {', '.join(sorted(missing))}")
    return _evaluate(structure, chi, phi)


def holds(structure: RelationalStructure, phi: Formula) -> bool:
    """R ⊨ φ，φ 必须是句子"""
    free = free_placeholders(phi)
    if free:
        raise EvaluationError(f"not a sentence: free placeholders {', '.join(sorted(free))}")
    return _evaluate(structure, EMPTY_ASSIGNMENT, phi)
