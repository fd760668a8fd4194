import logging
from pathlib import Path
from typing import Dict, List, Union

from lark import Lark, Transformer
from lark.exceptions import UnexpectedInput
from pydantic import BaseModel, Field, ValidationError

from logic.formula import EXISTS, FORALL
from logic.normal_form import QuantPrefix
from model.assignment import Assignment
from skolem.skolem_map import SkolemMap
from utils.errors import FileFormatError, NormalFormError

logger = logging.getLogger(__name__)

PREFIX_GRAMMAR = r"""
    start: quantification*
    quantification: QUANTIFIER SYMBOL "."
    QUANTIFIER.2: "exists" | "forall"
    SYMBOL: /[A-Za-z_][A-Za-z0-9_']*/
    %import common.WS
    %ignore WS
"""

_prefix_parser = Lark(PREFIX_GRAMMAR, parser="lalr")


class _PrefixBuilder(Transformer):
    def quantification(self, items):
        kind = EXISTS if str(items[0]) == "exists" else FORALL
        return kind, str(items[1])

    def start(self, items):
        return QuantPrefix(tuple(items))


class TableRow(BaseModel):
    """Skolem 表的一行"""

    input: Dict[str, str] = Field(..., description="全称变量上的赋值")
    output: Dict[str, str] = Field(..., description="全部前缀变量上的赋值")


class SkolemTableFile(BaseModel):
    """Skolem 表文件（JSON）"""

    prefix: str = Field(..., description="量化前缀，例如 'exists x. forall y.'")
    carrier: List[str] = Field(..., description="载体集合")
    table: List[TableRow] = Field(default_factory=list, description="映射表")


def parse_prefix(text: str) -> QuantPrefix:
    """
    解析量化前缀文本

    Args:
        text: 形如 "exists x. forall y. exists z." 的文本

    Returns:
        量化前缀
    """
    try:
        tree = _prefix_parser.parse(text)
    except UnexpectedInput as e:
        raise FileFormatError("malformed quantification prefix", e.line, e.column) from e
    try:
        return _PrefixBuilder().transform(tree)
    except Exception as e:
        original = getattr(e, "orig_exc", e)
        if isinstance(original, NormalFormError):
            raise FileFormatError(str(original)) from e
        raise


def parse_skolem_table(text: str, source: str = "<table>") -> SkolemMap:
    """
    解析 JSON 形式的 Skolem 表

    Args:
        text: JSON 文本
        source: 用于错误信息的来源名

    Returns:
        Skolem 映射（未校验，校验见 validate_skolem_map）
    """
    try:
        data = SkolemTableFile.model_validate_json(text)
    except ValidationError as e:
        error = e.errors()[0]
        raise FileFormatError(f"{source}: {error['msg']} at {list(error['loc'])}") from e
    prefix = parse_prefix(data.prefix)
    table = {Assignment(row.input): Assignment(row.output) for row in data.table}
    if len(table) != len(data.table):
        raise FileFormatError(f"{source}: duplicate input row")
    return SkolemMap(prefix, tuple(data.carrier), table)


def read_skolem_table(path: Union[str, Path]) -> SkolemMap:
    path = Path(path)
    logger.debug("reading skolem table %s", path)
    return parse_skolem_table(path.read_text(encoding="utf-8"), str(path))


def format_skolem_table(theta: SkolemMap) -> str:
    """把 Skolem 映射写成 JSON 文本"""
    rows = [
        TableRow(input={k: str(v) for k, v in chi.items()}, output={k: str(v) for k, v in theta.table[chi].items()})
        for chi in sorted(theta.table)
    ]
    data = SkolemTableFile(prefix=theta.prefix.text(), carrier=[str(d) for d in theta.carrier], table=rows)
    return data.model_dump_json(indent=2)
