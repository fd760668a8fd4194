import itertools
import logging
from typing import FrozenSet, Iterator, List, Optional, Sequence, Tuple

from logic.formula import EXISTS, FORALL, Formula, Not, Rel, conjoin, disjoin
from logic.normal_form import BindPrefix, Block, QuantPrefix, one_binding_block
from model.signature import LanguageSignature
from model.structure import RelationalStructure
from semantics.evaluator import holds
from utils.config import get_settings
from utils.errors import BisimulationError, ResourceLimitError

logger = logging.getLogger(__name__)


def _surjections(arguments: Sequence[str], variables: Sequence[str]) -> Iterator[BindPrefix]:
    """论元到变量的满射，每个变量都至少被一个论元使用"""
    for image in itertools.product(variables, repeat=len(arguments)):
        if set(image) == set(variables):
            yield BindPrefix.from_mapping(dict(zip(arguments, image)))


def _minterm(symbols: Sequence[Rel], values: Tuple[bool, ...]) -> Formula:
    return conjoin(s if v else Not(s) for s, v in zip(symbols, values))


def derived_bodies(relations: Sequence[str], arguments: FrozenSet[str]) -> Iterator[Formula]:
    """
    一个论元集合上全部非常值的派生关系

    先给出正文字，再给出负文字，最后是其余布尔函数（按真值表顺序的析取范式）。

    Args:
        relations: 论元集合恰为 arguments 的关系名
        arguments: 论元集合

    Returns:
        派生关系体的迭代器
    """
    symbols = [Rel(name, arguments) for name in relations]
    yield from symbols
    yield from (Not(s) for s in symbols)
    rows = list(itertools.product((True, False), repeat=len(symbols)))
    literal_tables = set()
    for index in range(len(symbols)):
        literal_tables.add(tuple(row[index] for row in rows))
        literal_tables.add(tuple(not row[index] for row in rows))
    for table in itertools.product((True, False), repeat=len(rows)):
        if all(table) or not any(table) or table in literal_tables:
            continue
        yield disjoin(_minterm(symbols, row) for row, value in zip(rows, table) if value)


def enumerate_one_binding_sentences(
    signature: LanguageSignature,
    depth: int,
    cap: Optional[int] = None,
) -> Iterator[Block]:
    """
    按规范顺序枚举量词数不超过 depth 的单绑定句子 ℘♭r̂

    变量名为 x0, x1, …；量词组合中 ∀ 先于 ∃。

    Args:
        signature: 签名
        depth: 最大量词数
        cap: 枚举数量上限，默认读取 SENTENCE_ENUMERATION_CAP

    Returns:
        单绑定块的迭代器
    """
    cap = get_settings().sentence_enumeration_cap if cap is None else cap
    count = 0
    for size in range(1, depth + 1):
        variables = [f"x{i}" for i in range(size)]
        for kinds in itertools.product((FORALL, EXISTS), repeat=size):
            prefix = QuantPrefix(tuple(zip(kinds, variables)))
            for arguments in signature.argument_sets():
                relations = signature.relations_over(arguments)
                for binding in _surjections(sorted(arguments), variables):
                    for body in derived_bodies(relations, arguments):
                        count += 1
                        if count > cap:
                            logger.warning("sentence enumeration stopped after %d sentences", cap)
                            raise ResourceLimitError("one-binding sentences", count, cap)
                        yield one_binding_block(prefix, binding, body)


def find_distinguishing_sentence(
    first: RelationalStructure,
    second: RelationalStructure,
    depth: int,
    cap: Optional[int] = None,
) -> Optional[Formula]:
    """
    寻找在两个结构上取值不同的单绑定句子

    Args:
        first: 结构 R1
        second: 结构 R2，与 R1 同签名
        depth: 最大量词数
        cap: 枚举数量上限

    Returns:
        第一个区分句子，全部一致时返回 None
    """
    if first.signature != second.signature:
        raise BisimulationError("signature mismatch: structures are over different signatures")
    checked = 0
    for block in enumerate_one_binding_sentences(first.signature, depth, cap):
        sentence = block.to_formula()
        checked += 1
        if holds(first, sentence) != holds(second, sentence):
            logger.info("distinguishing sentence found after %d candidates: %s", checked, block.text())
            return sentence
    logger.info("no distinguishing sentence among %d candidates", checked)
    return None


def compare_on_sentences(
    first: RelationalStructure,
    second: RelationalStructure,
    depth: int,
    cap: Optional[int] = None,
) -> Tuple[int, List[Block]]:
    """枚举到 depth 为止的全部单绑定句子，返回 (检查数量, 取值不同的句子)"""
    checked, differing = 0, []
    for block in enumerate_one_binding_sentences(first.signature, depth, cap):
        checked += 1
        sentence = block.to_formula()
        if holds(first, sentence) != holds(second, sentence):
            differing.append(block)
    return checked, differing
