import itertools
import logging
from typing import Callable, FrozenSet, Iterable, Iterator, List, Mapping, Optional, Sequence

from logic.formula import And, Formula, Not, Or, Rel, conjoin, disjoin, subformulas
from logic.normal_form import BindingForm, Block, DerivedRelation, alpha_key
from logic.printer import print_formula
from solver.cnf import CnfBuilder, Node, atom, conjunction, disjunction, negate
from utils.config import get_settings
from utils.errors import CouplingError, InterpolationError

logger = logging.getLogger(__name__)


def symbols_of(bodies: Iterable[Formula]) -> List[str]:
    names = set()
    for body in bodies:
        names.update(node.name for node in subformulas(body) if isinstance(node, Rel))
    return sorted(names)


def prop_eval(body: Formula, valuation: Mapping[str, bool]) -> bool:
    """把关系符号当作命题变量求值"""
    if isinstance(body, Rel):
        return valuation[body.name]
    if isinstance(body, Not):
        return not prop_eval(body.child, valuation)
    if isinstance(body, And):
        return prop_eval(body.left, valuation) and prop_eval(body.right, valuation)
    if isinstance(body, Or):
        return prop_eval(body.left, valuation) or prop_eval(body.right, valuation)
    raise TypeError(f"not propositional: {body!r}")


def to_node(body: Formula) -> Node:
    if isinstance(body, Rel):
        return atom(body.name)
    if isinstance(body, Not):
        return negate(to_node(body.child))
    if isinstance(body, And):
        return conjunction([to_node(body.left), to_node(body.right)])
    if isinstance(body, Or):
        return disjunction([to_node(body.left), to_node(body.right)])
    raise TypeError(f"not propositional: {body!r}")


def subsets_by_cardinality(items: Sequence, accept: Callable[[FrozenSet], bool]) -> Iterator[FrozenSet]:
    """按基数不减的顺序给出 accept 为真的全部子集"""
    for size in range(len(items) + 1):
        for chosen in itertools.combinations(items, size):
            subset = frozenset(chosen)
            if accept(subset):
                yield subset


def models_by_cardinality(body: Formula, symbols: Optional[Sequence[str]] = None) -> Iterator[FrozenSet[str]]:
    """以取真符号集合表示的全部模型，按基数不减"""
    symbols = list(symbols) if symbols is not None else symbols_of([body])
    return subsets_by_cardinality(symbols, lambda true: prop_eval(body, {s: s in true for s in symbols}))


def satisfiable(bodies: Sequence[Formula], limit: Optional[int] = None) -> bool:
    """
    命题公式的合取是否可满足

    Args:
        bodies: 只含 Rel/Not/And/Or 的公式
        limit: 真值表枚举的最大符号数，默认读取 TRUTH_TABLE_LIMIT

    Returns:
        真值
    """
    symbols = symbols_of(bodies)
    limit = get_settings().truth_table_limit if limit is None else limit
    if len(symbols) <= limit:
        for values in itertools.product((False, True), repeat=len(symbols)):
            valuation = dict(zip(symbols, values))
            if all(prop_eval(body, valuation) for body in bodies):
                return True
        return False
    logger.debug("%d symbols exceed the truth-table limit, using the SAT solver", len(symbols))
    builder = CnfBuilder()
    for body in bodies:
        builder.require(to_node(body))
    return builder.solve() is not None


def bool_sat(relations: Iterable[DerivedRelation], limit: Optional[int] = None) -> bool:
    """
    派生关系的合取作为布尔公式是否可满足

    Args:
        relations: 同一论元集合上的派生关系
        limit: 真值表上限

    Returns:
        真值
    """
    relations = list(relations)
    if len({r.arguments for r in relations}) > 1:
        raise CouplingError("argument-set mismatch: derived relations do not share one argument set")
    return satisfiable([r.body for r in relations], limit)


def implies(first: Formula, second: Formula) -> bool:
    return not satisfiable([first, Not(second)])


def _contradiction(symbol: Rel) -> Formula:
    return And(symbol, Not(symbol))


def _tautology(symbol: Rel) -> Formula:
    return Or(symbol, Not(symbol))


def basic_interpolant(first: DerivedRelation, second: DerivedRelation) -> DerivedRelation:
    """
    通过把非共享符号从 r̂1 中存在投影掉，构造命题插值

    Args:
        first: r̂1，要求 r̂1 ⟹ r̂2
        second: r̂2，与 r̂1 有相同的论元集合

    Returns:
        只用共享符号的 I，满足 r̂1 ⟹ I ⟹ r̂2
    """
    if first.arguments != second.arguments:
        raise InterpolationError("argument-set mismatch between the derived relations")
    if not implies(first.body, second.body):
        raise InterpolationError(f"not an implication: {first.text()} does not imply {second.text()}")
    arguments = first.arguments
    shared = sorted(set(first.symbols()) & set(second.symbols()))
    anchor = Rel(shared[0] if shared else first.symbols()[0], arguments)
    if not shared:
        body = _tautology(anchor) if satisfiable([first.body]) else _contradiction(anchor)
    else:
        minterms = []
        for values in itertools.product((True, False), repeat=len(shared)):
            literals = [Rel(s, arguments) if v else Not(Rel(s, arguments)) for s, v in zip(shared, values)]
            if satisfiable([first.body] + literals):
                minterms.append(conjoin(literals))
        if not minterms:
            body = _contradiction(anchor)
        elif len(minterms) == 2 ** len(shared):
            body = _tautology(anchor)
        else:
            body = disjoin(minterms)
    if not implies(first.body, body) or not implies(body, second.body):
        raise InterpolationError("projection did not yield an interpolant")
    logger.debug("interpolant of %s and %s: %s", first.text(), second.text(), print_formula(body))
    return DerivedRelation(body, arguments)


def interpolate_blocks(first: Block, second: Block) -> Block:
    """
    把命题插值提升到模式相同的两个单绑定块 ℘♭r̂1 ⟹ ℘♭r̂2

    Args:
        first: 前件块
        second: 后件块，与前件 α-等价地共享模式

    Returns:
        块 ℘♭I，其中 I 是 r̂1 与 r̂2 的命题插值
    """
    for block in (first, second):
        if not block.is_one_binding:
            raise InterpolationError(f"not a one-binding block: {block.text()}")
    left, right = alpha_key(first), alpha_key(second)
    if left.prefix != right.prefix or left.body.binding != right.body.binding:
        raise InterpolationError(f"schema mismatch: {first.text()} and {second.text()}")
    interpolant = basic_interpolant(first.body.relation, second.body.relation)
    return Block(first.prefix, BindingForm(first.body.binding, interpolant))
