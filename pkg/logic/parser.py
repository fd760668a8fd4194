import logging
from pathlib import Path
from typing import Optional, Sequence, Union

from lark import Lark, Transformer, Token
from lark.exceptions import UnexpectedInput, VisitError

from logic.formula import And, Bind, Exists, Forall, Formula, Not, Or, Rel
from model.signature import IDENTIFIER_PATTERN, LanguageSignature
from utils.errors import BindingFormsError, FormulaSyntaxError, ResolutionError

logger = logging.getLogger(__name__)

# 优先级：~ 与绑定 > & > | > -> > <->；量词向右取最大辖域
FORMULA_GRAMMAR = r"""
    ?start: formula

    ?formula: iff

    ?iff: implies
        | iff "<->" implies                  -> iff_op

    ?implies: disj
        | disj "->" implies                  -> implies_op

    ?disj: conj
        | disj "|" conj                      -> or_op

    ?conj: unary
        | conj "&" unary                     -> and_op

    ?unary: "~" unary                        -> not_op
        | binding unary                      -> bind_op
        | "exists" SYMBOL "." formula        -> exists_op
        | "forall" SYMBOL "." formula        -> forall_op
        | SYMBOL                             -> rel_atom
        | SYMBOL "(" SYMBOL ("," SYMBOL)* ")" -> positional_atom
        | "(" formula ")"

    binding: "(" SYMBOL "," SYMBOL ")"

    SYMBOL: /[A-Za-z0-9_][A-Za-z0-9_']*/
    COMMENT: /#[^\n]*/

    %import common.WS
    %ignore WS
    %ignore COMMENT
"""

_formula_parser = Lark(FORMULA_GRAMMAR, parser="lalr")


def _where(token: Token) -> str:
    return f"at line {token.line}, column {token.column}"


class FormulaBuilder(Transformer):
    """把语法树解析为 AST，同时在签名中解析关系和论元"""

    def __init__(self, signature: LanguageSignature, arg_order: Optional[Sequence[str]] = None):
        """
        初始化构造器

        Args:
            signature: 用于解析符号的签名
            arg_order: 位置语法糖 r(x,y) 使用的论元顺序，默认按字典序
        """
        super().__init__()
        self.signature = signature
        self.arg_order = list(arg_order) if arg_order else None

    def _variable(self, token: Token) -> str:
        name = str(token)
        if not IDENTIFIER_PATTERN.fullmatch(name):
            raise FormulaSyntaxError(f"invalid variable name {name!r}", token.line, token.column)
        if self.signature.is_argument(name):
            raise ResolutionError(f"variable shadows argument: {name} {_where(token)}")
        return name

    def _relation(self, token: Token) -> Rel:
        name = str(token)
        if not self.signature.is_relation(name):
            raise ResolutionError(f"unknown relation: {name} {_where(token)}")
        return Rel(name, self.signature.arity(name))

    def _ordered_arguments(self, relation: Rel):
        if self.arg_order is None:
            return sorted(relation.arguments)
        missing = relation.arguments - set(self.arg_order)
        if missing:
            raise ResolutionError(f"argument order misses {', '.join(sorted(missing))} of {relation.name}")
        return [a for a in self.arg_order if a in relation.arguments]

    def rel_atom(self, items):
        return self._relation(items[0])

    def positional_atom(self, items):
        relation = self._relation(items[0])
        variables = [self._variable(token) for token in items[1:]]
        ordered = self._ordered_arguments(relation)
        if len(variables) != len(ordered):
            raise ResolutionError(
                f"arity mismatch: {relation.name} takes {len(ordered)} positions, got {len(variables)} {_where(items[0])}"
            )
        result: Formula = relation
        for argument, variable in reversed(list(zip(ordered, variables))):
            result = Bind(argument, variable, result)
        return result

    def binding(self, items):
        argument, variable = items
        if not self.signature.is_argument(str(argument)):
            raise ResolutionError(f"unknown argument: {argument} {_where(argument)}")
        return str(argument), self._variable(variable)

    def bind_op(self, items):
        (argument, variable), child = items
        return Bind(argument, variable, child)

    def not_op(self, items):
        return Not(items[0])

    def and_op(self, items):
        return And(items[0], items[1])

    def or_op(self, items):
        return Or(items[0], items[1])

    def implies_op(self, items):
        # φ → ψ ≡ ¬φ ∨ ψ
        return Or(Not(items[0]), items[1])

    def iff_op(self, items):
        # φ ↔ ψ ≡ (φ ∧ ψ) ∨ (¬φ ∧ ¬ψ)
        left, right = items
        return Or(And(left, right), And(Not(left), Not(right)))

    def exists_op(self, items):
        return Exists(self._variable(items[0]), items[1])

    def forall_op(self, items):
        return Forall(self._variable(items[0]), items[1])


def parse_formula(
    text: str,
    signature: LanguageSignature,
    arg_order: Optional[Sequence[str]] = None,
) -> Formula:
    """
    解析绑定语法的公式

    Args:
        text: 公式文本
        signature: 已校验的签名
        arg_order: 位置语法糖的论元顺序（可选）

    Returns:
        公式 AST
    """
    try:
        tree = _formula_parser.parse(text)
    except UnexpectedInput as e:
        raise FormulaSyntaxError("syntax error in formula", e.line, e.column) from e
    try:
        return FormulaBuilder(signature, arg_order).transform(tree)
    except VisitError as e:
        if isinstance(e.orig_exc, BindingFormsError):
            raise e.orig_exc from None
        raise


def read_formula_file(
    path: Union[str, Path],
    signature: LanguageSignature,
    arg_order: Optional[Sequence[str]] = None,
) -> Formula:
    path = Path(path)
    logger.debug("reading formula %s", path)
    return parse_formula(path.read_text(encoding="utf-8"), signature, arg_order)
