from dataclasses import dataclass
from typing import FrozenSet, Iterator, Tuple, Union

EXISTS = "exists"
FORALL = "forall"


@dataclass(frozen=True)
class Rel:
    """关系原子 r，arguments 为解析时确定的 ar(r)"""

    name: str
    arguments: FrozenSet[str]


@dataclass(frozen=True)
class Not:
    child: "Formula"


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Exists:
    variable: str
    child: "Formula"


@dataclass(frozen=True)
class Forall:
    variable: str
    child: "Formula"


@dataclass(frozen=True)
class Bind:
    """绑定 (a, v)φ：把变量 v 的值写入论元 a"""

    argument: str
    variable: str
    child: "Formula"


Formula = Union[Rel, Not, And, Or, Exists, Forall, Bind]
Quantified = (Exists, Forall)


def quantifier_of(node: Formula) -> str:
    return EXISTS if isinstance(node, Exists) else FORALL


def make_quantifier(kind: str, variable: str, child: Formula) -> Formula:
    return Exists(variable, child) if kind == EXISTS else Forall(variable, child)


def conjoin(items) -> Formula:
    """左结合地合取一组公式（至少一个）"""
    items = list(items)
    result = items[0]
    for item in items[1:]:
        result = And(result, item)
    return result


def disjoin(items) -> Formula:
    items = list(items)
    result = items[0]
    for item in items[1:]:
        result = Or(result, item)
    return result


def free_split(phi: Formula) -> Tuple[FrozenSet[str], FrozenSet[str]]:
    """
    按定义计算自由论元与自由变量

    Args:
        phi: 公式

    Returns:
        (ar(φ), var(φ))
    """
    if isinstance(phi, Rel):
        return phi.arguments, frozenset()
    if isinstance(phi, Not):
        return free_split(phi.child)
    if isinstance(phi, (And, Or)):
        left_args, left_vars = free_split(phi.left)
        right_args, right_vars = free_split(phi.right)
        return left_args | right_args, left_vars | right_vars
    if isinstance(phi, Quantified):
        args, variables = free_split(phi.child)
        return args, variables - {phi.variable}
    if isinstance(phi, Bind):
        args, variables = free_split(phi.child)
        if phi.argument in args:
            return args - {phi.argument}, variables | {phi.variable}
        return args, variables
    raise TypeError(f"not a formula: {phi!r}")


def free_placeholders(phi: Formula) -> FrozenSet[str]:
    """free(φ) = ar(φ) ∪ var(φ)"""
    args, variables = free_split(phi)
    return args | variables


def free_arguments(phi: Formula) -> FrozenSet[str]:
    return free_split(phi)[0]


def free_variables(phi: Formula) -> FrozenSet[str]:
    return free_split(phi)[1]


def is_sentence(phi: Formula) -> bool:
    return not free_placeholders(phi)


def relation_names(phi: Formula) -> FrozenSet[str]:
    return frozenset(node.name for node in subformulas(phi) if isinstance(node, Rel))


def subformulas(phi: Formula) -> Iterator[Formula]:
    """先序遍历全部子公式"""
    stack = [phi]
    while stack:
        node = stack.pop()
        yield node
        if isinstance(node, (And, Or)):
            stack.append(node.right)
            stack.append(node.left)
        elif isinstance(node, (Not, Exists, Forall, Bind)):
            stack.append(node.child)


def size(phi: Formula) -> int:
    return sum(1 for _ in subformulas(phi))


def is_propositional(phi: Formula) -> bool:
    """只由关系原子、¬、∧、∨ 构成（派生关系的形状）"""
    return all(isinstance(node, (Rel, Not, And, Or)) for node in subformulas(phi))
