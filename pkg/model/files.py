import logging
from pathlib import Path
from typing import Dict, List, Tuple, Union

from lark import Lark, Transformer
from lark.exceptions import UnexpectedInput

from model.assignment import Assignment
from model.signature import LanguageSignature
from model.structure import RelationalStructure
from utils.errors import FileFormatError

logger = logging.getLogger(__name__)

_COMMON = r"""
    SYMBOL: /[A-Za-z0-9_][A-Za-z0-9_']*/
    COMMENT: /#[^\n]*/
    %import common.WS
    %ignore WS
    %ignore COMMENT
"""

SIGNATURE_GRAMMAR = r"""
    start: "signature" "{" declaration* "}"
    ?declaration: arguments_decl | relation_decl
    arguments_decl: "arguments" ":" symbols ";"
    relation_decl: "relation" SYMBOL "(" symbols ")" ";"
    symbols: SYMBOL ("," SYMBOL)*
""" + _COMMON

STRUCTURE_GRAMMAR = r"""
    start: "structure" "{" domain_decl entry* "}"
    domain_decl: "domain" ":" symbols ";"
    entry: SYMBOL ":" [tuples] ";"
    tuples: tuple ("," tuple)*
    tuple: "[" pair ("," pair)* "]"
    pair: SYMBOL "=" SYMBOL
    symbols: SYMBOL ("," SYMBOL)*
""" + _COMMON

_signature_parser = Lark(SIGNATURE_GRAMMAR, parser="lalr")
_structure_parser = Lark(STRUCTURE_GRAMMAR, parser="lalr")


class _SignatureBuilder(Transformer):
    """把 .sig 语法树转换为 LanguageSignature"""

    def symbols(self, items):
        return [str(token) for token in items]

    def arguments_decl(self, items):
        return ("arguments", items[0])

    def relation_decl(self, items):
        return ("relation", (str(items[0]), items[1]))

    def start(self, items):
        arguments: List[str] = []
        arg_fun: Dict[str, List[str]] = {}
        for kind, payload in items:
            if kind == "arguments":
                arguments.extend(payload)
            else:
                name, args = payload
                if name in arg_fun:
                    raise FileFormatError(f"relation {name} declared twice")
                arg_fun[name] = args
        return LanguageSignature.create(arguments, arg_fun.keys(), arg_fun)


class _StructureBuilder(Transformer):
    """把 .str 语法树转换为 (论域, 关系解释)"""

    def symbols(self, items):
        return [str(token) for token in items]

    def domain_decl(self, items):
        return items[0]

    def pair(self, items):
        return (str(items[0]), str(items[1]))

    def tuple(self, items):
        entries = dict(items)
        if len(entries) != len(items):
            raise FileFormatError(f"argument repeated in tuple {items}")
        return Assignment(entries)

    def tuples(self, items):
        return list(items)

    def entry(self, items):
        return (str(items[0]), items[1] or [])

    def start(self, items):
        domain = items[0]
        relations: Dict[str, List[Assignment]] = {}
        for name, tuples in items[1:]:
            relations.setdefault(name, []).extend(tuples)
        return domain, relations


def _parse(parser: Lark, builder: Transformer, text: str, source: str):
    try:
        tree = parser.parse(text)
    except UnexpectedInput as e:
        raise FileFormatError(f"{source}: unexpected input", e.line, e.column) from e
    try:
        return builder.transform(tree)
    except Exception as e:
        # lark 把 Transformer 内部的异常包装成 VisitError
        original = getattr(e, "orig_exc", e)
        if isinstance(original, FileFormatError):
            raise original from e
        raise


def parse_signature(text: str, source: str = "<signature>") -> LanguageSignature:
    """
    解析签名文本

    Args:
        text: `signature { arguments: a, b; relation q(a, b); }` 形式的文本
        source: 用于错误信息的来源名

    Returns:
        签名
    """
    return _parse(_signature_parser, _SignatureBuilder(), text, source)


def parse_structure(text: str, signature: LanguageSignature, source: str = "<structure>") -> RelationalStructure:
    """
    解析结构文本，签名由调用方单独提供

    Args:
        text: `structure { domain: d0, d1; q: [a=d0, b=d0]; }` 形式的文本
        signature: 结构所属的签名
        source: 用于错误信息的来源名

    Returns:
        结构（文件中未出现的关系为空解释）
    """
    domain, relations = _parse(_structure_parser, _StructureBuilder(), text, source)
    return RelationalStructure.create(signature, domain, relations)


def read_signature_file(path: Union[str, Path]) -> LanguageSignature:
    path = Path(path)
    logger.debug("reading signature %s", path)
    return parse_signature(path.read_text(encoding="utf-8"), str(path))


def read_structure_file(path: Union[str, Path], signature: LanguageSignature) -> RelationalStructure:
    path = Path(path)
    logger.debug("reading structure %s", path)
    return parse_structure(path.read_text(encoding="utf-8"), signature, str(path))


def format_signature(sig: LanguageSignature) -> str:
    """输出规范的 .sig 文本"""
    lines = ["signature {", f"  arguments: {', '.join(sig.arguments)};"]
    for relation in sig.relations:
        lines.append(f"  relation {relation}({', '.join(sorted(sig.arg_fun[relation]))});")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _format_tuple(tuple_function: Assignment) -> str:
    return "[" + ", ".join(f"{a}={v}" for a, v in tuple_function.items()) + "]"


def format_structure(structure: RelationalStructure) -> str:
    """输出规范的 .str 文本，空关系写成 `r: ;`"""
    lines = ["structure {", f"  domain: {', '.join(structure.domain)};"]
    for relation in structure.signature.relations:
        tuples: List[Tuple] = sorted(structure.interpretation(relation))
        body = ", ".join(_format_tuple(t) for t in tuples)
        lines.append(f"  {relation}: {body};" if body else f"  {relation}: ;")
    lines.append("}")
    return "\n".join(lines) + "\n"
