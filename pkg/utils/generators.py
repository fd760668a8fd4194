import random
from typing import List, Optional, Sequence, Tuple

from logic.formula import EXISTS, FORALL, And, Bind, Exists, Forall, Formula, Not, Or, Rel
from logic.normal_form import BindPrefix, DerivedRelation, QuantPrefix, one_binding_block
from model.signature import LanguageSignature
from model.structure import RelationalStructure, all_tuple_functions, canonical_domain


def random_signature(
    rng: random.Random,
    max_arguments: int = 3,
    max_relations: int = 2,
) -> LanguageSignature:
    """
    随机签名：论元 a, b, c…，关系 q, r, s…，每个关系的论元集合非空

    Args:
        rng: 随机数生成器
        max_arguments: 最多论元数
        max_relations: 最多关系数

    Returns:
        签名
    """
    arguments = "abcdefgh"[: rng.randint(1, max_arguments)]
    relations = "qrstuvw"[: rng.randint(1, max_relations)]
    arg_fun = {}
    for relation in relations:
        size = rng.randint(1, len(arguments))
        arg_fun[relation] = rng.sample(arguments, size)
    used = sorted(set().union(*arg_fun.values()))
    return LanguageSignature.create(used, relations, arg_fun)


def random_body(symbols: Sequence[Rel], rng: random.Random, depth: int = 2) -> Formula:
    """关系符号上的随机布尔组合"""
    if depth <= 0 or rng.random() < 0.4:
        symbol = rng.choice(list(symbols))
        return Not(symbol) if rng.random() < 0.4 else symbol
    connective = And if rng.random() < 0.5 else Or
    return connective(random_body(symbols, rng, depth - 1), random_body(symbols, rng, depth - 1))


def _random_leaf(
    signature: LanguageSignature,
    rng: random.Random,
    variables: List[str],
    bound: frozenset,
    fresh: List[int],
) -> Formula:
    relation = rng.choice(signature.relations)
    atom = Rel(relation, signature.arity(relation))
    body: Formula = Not(atom) if rng.random() < 0.4 else atom
    missing = sorted(atom.arguments - bound)
    scope = list(variables)
    pending = None
    if missing and not scope:
        pending = f"x{fresh[0]}"
        fresh[0] += 1
        scope.append(pending)
    for argument in missing:
        body = Bind(argument, rng.choice(scope), body)
    if pending is None:
        return body
    return Exists(pending, body) if rng.random() < 0.5 else Forall(pending, body)


def _random_formula(
    signature: LanguageSignature,
    rng: random.Random,
    depth: int,
    variables: List[str],
    bound: frozenset,
    fresh: List[int],
    max_variables: int,
) -> Formula:
    if depth <= 0 or rng.random() < 0.2:
        return _random_leaf(signature, rng, variables, bound, fresh)
    choices = ["not", "and", "or"]
    if len(variables) < max_variables:
        choices += ["exists", "forall"]
    if variables:
        choices.append("bind")
    choice = rng.choice(choices)
    if choice == "not":
        return Not(_random_formula(signature, rng, depth - 1, variables, bound, fresh, max_variables))
    if choice in ("and", "or"):
        left = _random_formula(signature, rng, depth - 1, variables, bound, fresh, max_variables)
        right = _random_formula(signature, rng, depth - 1, variables, bound, fresh, max_variables)
        return And(left, right) if choice == "and" else Or(left, right)
    if choice in ("exists", "forall"):
        variable = f"x{fresh[0]}"
        fresh[0] += 1
        child = _random_formula(signature, rng, depth - 1, variables + [variable], bound, fresh, max_variables)
        return Exists(variable, child) if choice == "exists" else Forall(variable, child)
    argument = rng.choice(signature.arguments)
    variable = rng.choice(variables)
    child = _random_formula(signature, rng, depth - 1, variables, bound | {argument}, fresh, max_variables)
    return Bind(argument, variable, child)


def random_sentence(
    signature: LanguageSignature,
    rng: random.Random,
    depth: int = 4,
    max_variables: int = 3,
) -> Formula:
    """
    随机句子（任意片段），每个原子的论元都在作用域内被绑定

    Args:
        signature: 签名
        rng: 随机数生成器
        depth: 最大嵌套深度
        max_variables: 一条路径上最多的量词数

    Returns:
        没有自由占位符的公式
    """
    return _random_formula(signature, rng, depth, [], frozenset(), [0], max_variables)


def random_one_binding_block(
    signature: LanguageSignature,
    rng: random.Random,
    max_variables: int = 3,
):
    """随机单绑定块 ℘♭r̂：每个变量都被 ♭ 使用"""
    arguments = rng.choice(signature.argument_sets())
    ordered = sorted(arguments)
    count = rng.randint(1, min(max_variables, len(ordered)))
    variables = [f"x{i}" for i in range(count)]
    while True:
        image = [rng.choice(variables) for _ in ordered]
        if set(image) == set(variables):
            break
    kinds = [rng.choice((EXISTS, FORALL)) for _ in variables]
    symbols = [Rel(name, arguments) for name in signature.relations_over(arguments)]
    return one_binding_block(
        QuantPrefix(tuple(zip(kinds, variables))),
        BindPrefix.from_mapping(dict(zip(ordered, image))),
        random_body(symbols, rng, depth=1),
    )


def random_ob_sentence(
    signature: LanguageSignature,
    rng: random.Random,
    max_leaves: int = 3,
    max_variables: int = 3,
) -> Formula:
    """由至多 max_leaves 个单绑定块经 ∧/∨ 组合成的随机句子"""
    leaves = [
        random_one_binding_block(signature, rng, max_variables).to_formula()
        for _ in range(rng.randint(1, max_leaves))
    ]
    result = leaves[0]
    for leaf in leaves[1:]:
        result = And(result, leaf) if rng.random() < 0.5 else Or(result, leaf)
    return result


def random_implication_pair(
    rng: random.Random,
    arguments: Sequence[str] = ("a",),
) -> Tuple[DerivedRelation, DerivedRelation]:
    """
    随机蕴含对 r̂1 ⟹ r̂2：r̂1 = f ∧ g，r̂2 = f ∨ h，f 只用共享符号

    Args:
        rng: 随机数生成器
        arguments: 派生关系的论元集合

    Returns:
        (r̂1, r̂2)
    """
    args = frozenset(arguments)
    shared = [Rel(name, args) for name in ("p", "q", "r")[: rng.randint(1, 3)]]
    left_only = [Rel(name, args) for name in ("s", "t")[: rng.randint(1, 2)]]
    right_only = [Rel(name, args) for name in ("u", "v")[: rng.randint(1, 2)]]
    core = random_body(shared, rng)
    first = And(core, random_body(shared + left_only, rng))
    second = Or(core, random_body(shared + right_only, rng))
    return DerivedRelation(first, args), DerivedRelation(second, args)


def random_structure(
    signature: LanguageSignature,
    rng: random.Random,
    order: Optional[int] = None,
    density: float = 0.5,
) -> RelationalStructure:
    """规范论域上的随机结构，每个元组以 density 的概率属于关系"""
    order = order or rng.randint(1, 3)
    domain = canonical_domain(order)
    relations = {
        relation: [t for t in all_tuple_functions(signature.arity(relation), domain) if rng.random() < density]
        for relation in signature.relations
    }
    return RelationalStructure.create(signature, domain, relations)

