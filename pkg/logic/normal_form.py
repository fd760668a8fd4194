import logging
from dataclasses import dataclass
from typing import Callable, Dict, FrozenSet, Iterator, List, Mapping, Tuple, Union

from logic.formula import (
    EXISTS,
    FORALL,
    And,
    Bind,
    Exists,
    Forall,
    Formula,
    Not,
    Or,
    Quantified,
    Rel,
    free_arguments,
    free_placeholders,
    make_quantifier,
    quantifier_of,
    subformulas,
)
from logic.printer import print_formula
from utils.errors import NormalFormError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class QuantPrefix:
    """量化前缀 ℘：(量词, 变量) 序列，每个变量至多出现一次"""

    quantifications: Tuple[Tuple[str, str], ...]

    def __post_init__(self):
        variables = [v for _, v in self.quantifications]
        if len(set(variables)) != len(variables):
            raise NormalFormError(f"variable quantified twice in prefix {variables}")

    @classmethod
    def of(cls, *items: Tuple[str, str]) -> "QuantPrefix":
        return cls(tuple(items))

    @property
    def variables(self) -> Tuple[str, ...]:
        return tuple(v for _, v in self.quantifications)

    @property
    def existentials(self) -> FrozenSet[str]:
        return frozenset(v for k, v in self.quantifications if k == EXISTS)

    @property
    def universals(self) -> FrozenSet[str]:
        return frozenset(v for k, v in self.quantifications if k == FORALL)

    def kind_of(self, variable: str) -> str:
        for kind, v in self.quantifications:
            if v == variable:
                return kind
        raise KeyError(variable)

    def position(self, variable: str) -> int:
        return self.variables.index(variable)

    def dependencies(self, variable: str) -> FrozenSet[str]:
        """Dep℘(v)：v 之前的全称变量"""
        before = self.variables[: self.position(variable)]
        return frozenset(v for v in before if v in self.universals)

    def depends(self, first: str, second: str) -> bool:
        """first ⇝℘ second：全称变量 first 在存在变量 second 之前"""
        return (
            first in self.universals
            and second in self.existentials
            and self.position(first) < self.position(second)
        )

    def rename(self, mapping: Mapping[str, str]) -> "QuantPrefix":
        return QuantPrefix(tuple((k, mapping.get(v, v)) for k, v in self.quantifications))

    def text(self) -> str:
        return " ".join(f"{k} {v}." for k, v in self.quantifications)

    def __len__(self) -> int:
        return len(self.quantifications)


@dataclass(frozen=True)
class BindPrefix:
    """绑定前缀 ♭：(论元, 变量) 序列，按论元字典序保存，每个论元至多出现一次"""

    bindings: Tuple[Tuple[str, str], ...]

    def __post_init__(self):
        arguments = [a for a, _ in self.bindings]
        if len(set(arguments)) != len(arguments):
            raise NormalFormError(f"argument bound twice in prefix {arguments}")

    @classmethod
    def from_mapping(cls, mapping: Mapping[str, str]) -> "BindPrefix":
        return cls(tuple(sorted(mapping.items())))

    @property
    def arguments(self) -> FrozenSet[str]:
        return frozenset(a for a, _ in self.bindings)

    @property
    def variables(self) -> FrozenSet[str]:
        return frozenset(v for _, v in self.bindings)

    def variable_of(self, argument: str) -> str:
        return dict(self.bindings)[argument]

    def as_dict(self) -> Dict[str, str]:
        return dict(self.bindings)

    def rename(self, mapping: Mapping[str, str]) -> "BindPrefix":
        return BindPrefix(tuple((a, mapping.get(v, v)) for a, v in self.bindings))

    def wrap(self, child: Formula) -> Formula:
        for argument, variable in reversed(self.bindings):
            child = Bind(argument, variable, child)
        return child

    def text(self) -> str:
        return "".join(f"({a}, {v})" for a, v in self.bindings)


@dataclass(frozen=True)
class DerivedRelation:
    """派生关系 r̂：同一论元集合上的关系符号的布尔组合"""

    body: Formula
    arguments: FrozenSet[str]

    @classmethod
    def of(cls, body: Formula) -> "DerivedRelation":
        """
        从命题形状的公式构造派生关系，所有原子必须有相同的论元集合

        Args:
            body: 只含 Rel/Not/And/Or 的公式

        Returns:
            派生关系
        """
        argument_sets = set()
        for node in subformulas(body):
            if isinstance(node, Rel):
                argument_sets.add(node.arguments)
            elif not isinstance(node, (Not, And, Or)):
                raise NormalFormError(f"derived relation body is not propositional: {print_formula(node)}")
        if len(argument_sets) != 1:
            raise NormalFormError("derived relation atoms do not share one argument set")
        return cls(body, argument_sets.pop())

    def symbols(self) -> Tuple[str, ...]:
        return tuple(sorted({n.name for n in subformulas(self.body) if isinstance(n, Rel)}))

    def text(self) -> str:
        return print_formula(self.body)


@dataclass(frozen=True)
class BindingForm:
    """块体的叶子 (♭, r̂)"""

    binding: BindPrefix
    relation: DerivedRelation

    def to_formula(self) -> Formula:
        return self.binding.wrap(self.relation.body)


@dataclass(frozen=True)
class Conj:
    left: "Tree"
    right: "Tree"


@dataclass(frozen=True)
class Disj:
    left: "Tree"
    right: "Tree"


BodyTree = Union[BindingForm, Conj, Disj]


@dataclass(frozen=True)
class Block:
    """叶子块 ℘ψ：量化前缀加上 (♭, r̂) 对的布尔组合"""

    prefix: QuantPrefix
    body: BodyTree

    def binding_forms(self) -> List[BindingForm]:
        return list(iter_leaves(self.body))

    @property
    def is_one_binding(self) -> bool:
        return isinstance(self.body, BindingForm)

    def to_formula(self) -> Formula:
        result = tree_to_formula(self.body, BindingForm.to_formula)
        for kind, variable in reversed(self.prefix.quantifications):
            result = make_quantifier(kind, variable, result)
        return result

    def rename(self, mapping: Mapping[str, str]) -> "Block":
        body = map_tree(
            self.body,
            lambda form: BindingForm(form.binding.rename(mapping), form.relation),
        )
        return Block(self.prefix.rename(mapping), body)

    def text(self) -> str:
        return print_formula(self.to_formula())


Tree = Union[Block, BindingForm, Conj, Disj]


def iter_leaves(tree) -> Iterator:
    """从左到右枚举布尔树的叶子"""
    if isinstance(tree, (Conj, Disj)):
        yield from iter_leaves(tree.left)
        yield from iter_leaves(tree.right)
    else:
        yield tree


def map_tree(tree, fn: Callable):
    if isinstance(tree, (Conj, Disj)):
        return type(tree)(map_tree(tree.left, fn), map_tree(tree.right, fn))
    return fn(tree)


def tree_to_formula(tree, leaf_to_formula: Callable) -> Formula:
    if isinstance(tree, Conj):
        return And(tree_to_formula(tree.left, leaf_to_formula), tree_to_formula(tree.right, leaf_to_formula))
    if isinstance(tree, Disj):
        return Or(tree_to_formula(tree.left, leaf_to_formula), tree_to_formula(tree.right, leaf_to_formula))
    return leaf_to_formula(tree)


@dataclass(frozen=True)
class NormalFormSentence:
    """绑定范式：叶子为块的 ∧/∨ 布尔树"""

    tree: Union[Block, Conj, Disj]

    def leaves(self) -> Tuple[Block, ...]:
        return tuple(iter_leaves(self.tree))

    def to_formula(self) -> Formula:
        return tree_to_formula(self.tree, Block.to_formula)

    def map_leaves(self, fn: Callable[[Block], Block]) -> "NormalFormSentence":
        return NormalFormSentence(map_tree(self.tree, fn))

    def text(self) -> str:
        return print_formula(self.to_formula())


def one_binding_block(prefix: QuantPrefix, binding: BindPrefix, body: Formula) -> Block:
    """构造一个单绑定块 ℘♭r̂"""
    return Block(prefix, BindingForm(binding, DerivedRelation.of(body)))


def alpha_key(block: Block) -> Block:
    """块的 α-等价类代表：变量按前缀顺序改名为 v0, v1, …"""
    mapping = {v: f"v{i}" for i, v in enumerate(block.prefix.variables)}
    return block.rename(mapping)


def print_normal_form(nf: NormalFormSentence) -> str:
    return nf.text()


# ---- 规范化流水线，每一步都保持语义等价 ----


def push_negations(phi: Formula) -> Formula:
    """把 ¬ 推到关系原子上（¬♭r ≡ ♭¬r，量词对偶）"""
    if isinstance(phi, Rel):
        return phi
    if isinstance(phi, And):
        return And(push_negations(phi.left), push_negations(phi.right))
    if isinstance(phi, Or):
        return Or(push_negations(phi.left), push_negations(phi.right))
    if isinstance(phi, Quantified):
        return make_quantifier(quantifier_of(phi), phi.variable, push_negations(phi.child))
    if isinstance(phi, Bind):
        return Bind(phi.argument, phi.variable, push_negations(phi.child))
    child = phi.child
    if isinstance(child, Rel):
        return phi
    if isinstance(child, Not):
        return push_negations(child.child)
    if isinstance(child, And):
        return Or(push_negations(Not(child.left)), push_negations(Not(child.right)))
    if isinstance(child, Or):
        return And(push_negations(Not(child.left)), push_negations(Not(child.right)))
    if isinstance(child, Exists):
        return Forall(child.variable, push_negations(Not(child.child)))
    if isinstance(child, Forall):
        return Exists(child.variable, push_negations(Not(child.child)))
    return Bind(child.argument, child.variable, push_negations(Not(child.child)))


def strip_vacuous_bindings(phi: Formula) -> Formula:
    """删除 (c, x)φ 中 c 不在 φ 自由论元里的绑定"""
    if isinstance(phi, Rel):
        return phi
    if isinstance(phi, Not):
        return Not(strip_vacuous_bindings(phi.child))
    if isinstance(phi, (And, Or)):
        return type(phi)(strip_vacuous_bindings(phi.left), strip_vacuous_bindings(phi.right))
    if isinstance(phi, Quantified):
        return make_quantifier(quantifier_of(phi), phi.variable, strip_vacuous_bindings(phi.child))
    child = strip_vacuous_bindings(phi.child)
    if phi.argument not in free_arguments(child):
        return child
    return Bind(phi.argument, phi.variable, child)


def rename_bound_variables(phi: Formula, start: int = 0) -> Formula:
    """按先序把每个量词变量改名为新的 x<i>"""
    counter = [start]

    def walk(node: Formula, env: Dict[str, str]) -> Formula:
        if isinstance(node, Rel):
            return node
        if isinstance(node, Not):
            return Not(walk(node.child, env))
        if isinstance(node, (And, Or)):
            left = walk(node.left, env)
            return type(node)(left, walk(node.right, env))
        if isinstance(node, Quantified):
            fresh = f"x{counter[0]}"
            counter[0] += 1
            return make_quantifier(quantifier_of(node), fresh, walk(node.child, {**env, node.variable: fresh}))
        return Bind(node.argument, env.get(node.variable, node.variable), walk(node.child, env))

    return walk(phi, {})


def _pull_quantifiers(phi: Formula) -> Tuple[List[Tuple[str, str]], Formula]:
    # 变量已两两不同且论域非空，量词可以越过 ∧/∨ 与绑定上浮
    if isinstance(phi, (Rel, Not)):
        return [], phi
    if isinstance(phi, (And, Or)):
        left_prefix, left = _pull_quantifiers(phi.left)
        right_prefix, right = _pull_quantifiers(phi.right)
        return left_prefix + right_prefix, type(phi)(left, right)
    if isinstance(phi, Quantified):
        prefix, matrix = _pull_quantifiers(phi.child)
        return [(quantifier_of(phi), phi.variable)] + prefix, matrix
    prefix, matrix = _pull_quantifiers(phi.child)
    return prefix, Bind(phi.argument, phi.variable, matrix)


def _binding_forms(matrix: Formula, context: Dict[str, str]) -> BodyTree:
    """把绑定下推到文字上，每个文字得到自己的有效绑定前缀"""
    if isinstance(matrix, Bind):
        return _binding_forms(matrix.child, {**context, matrix.argument: matrix.variable})
    if isinstance(matrix, And):
        return Conj(_binding_forms(matrix.left, context), _binding_forms(matrix.right, context))
    if isinstance(matrix, Or):
        return Disj(_binding_forms(matrix.left, context), _binding_forms(matrix.right, context))
    atom = matrix.child if isinstance(matrix, Not) else matrix
    missing = atom.arguments - set(context)
    if missing:
        raise NormalFormError(f"not a sentence: argument {', '.join(sorted(missing))} of {atom.name} is free")
    binding = BindPrefix.from_mapping({a: context[a] for a in atom.arguments})
    return BindingForm(binding, DerivedRelation(matrix, atom.arguments))


def group_binding_forms(body: BodyTree) -> BodyTree:
    """自底向上合并共享同一 ♭ 的极大子树为一个派生关系"""
    if isinstance(body, BindingForm):
        return body
    left = group_binding_forms(body.left)
    right = group_binding_forms(body.right)
    if isinstance(left, BindingForm) and isinstance(right, BindingForm) and left.binding == right.binding:
        connective = And if isinstance(body, Conj) else Or
        merged = connective(left.relation.body, right.relation.body)
        return BindingForm(left.binding, DerivedRelation(merged, left.relation.arguments))
    return type(body)(left, right)


def _make_block(phi: Formula) -> Block:
    quantifications, matrix = _pull_quantifiers(phi)
    body = _binding_forms(matrix, {})
    used = set()
    for form in iter_leaves(body):
        used |= form.binding.variables
    kept = tuple((k, v) for k, v in quantifications if v in used)
    if len(kept) != len(quantifications):
        logger.debug("stripped vacuous quantifiers %s", [v for _, v in quantifications if v not in used])
    return Block(QuantPrefix(kept), group_binding_forms(body))


def _split_sentence(phi: Formula):
    if isinstance(phi, (And, Or)) and not free_placeholders(phi.left) and not free_placeholders(phi.right):
        node = Conj if isinstance(phi, And) else Disj
        return node(_split_sentence(phi.left), _split_sentence(phi.right))
    if isinstance(phi, (Rel, Not)):
        raise NormalFormError("not a sentence: atom outside every quantifier")
    return _make_block(phi)


def rename_apart(nf: NormalFormSentence, start: int = 0) -> NormalFormSentence:
    """
    叶子之间改名分离：从左到右按前缀顺序把变量改名为 x0, x1, …

    Args:
        nf: 范式句子
        start: 起始编号

    Returns:
        每个叶子与原叶子 α-等价、且不同叶子的模式两两不同的句子
    """
    counter = [start]

    def rename(block: Block) -> Block:
        mapping = {}
        for variable in block.prefix.variables:
            mapping[variable] = f"x{counter[0]}"
            counter[0] += 1
        return block.rename(mapping)

    return nf.map_leaves(rename)


def to_binding_normal_form(phi: Formula) -> NormalFormSentence:
    """
    把句子转换为等价的绑定范式

    Args:
        phi: 句子（没有自由占位符）

    Returns:
        范式句子，变量名为 x0, x1, …
    """
    free = free_placeholders(phi)
    if free:
        raise NormalFormError(f"not a sentence: free placeholders {', '.join(sorted(free))}")
    step = push_negations(phi)
    step = strip_vacuous_bindings(step)
    step = rename_bound_variables(step)
    logger.debug("negation normal form: %s", print_formula(step))
    nf = rename_apart(NormalFormSentence(_split_sentence(step)))
    logger.debug("binding normal form: %s", nf.text())
    return nf
