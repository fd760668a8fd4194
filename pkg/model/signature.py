import re
import sys
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Mapping, Tuple

from utils.errors import SignatureError

# 论元名和论域元素允许以数字开头（如论元 1、2 或元素 0、1'）
SYMBOL_PATTERN = re.compile(r"[A-Za-z0-9_][A-Za-z0-9_']*")
IDENTIFIER_PATTERN = re.compile(r"[A-Za-z_][A-Za-z0-9_']*")


def make_symbol(name: str) -> str:
    """
    校验并驻留一个符号名

    Args:
        name: 符号名

    Returns:
        驻留后的字符串
    """
    if not isinstance(name, str) or not SYMBOL_PATTERN.fullmatch(name):
        raise SignatureError(f"invalid symbol name: {name!r}")
    return sys.intern(name)


@dataclass(frozen=True)
class LanguageSignature:
    """语言签名：论元集合、关系集合以及论元函数 ar(·)"""

    arguments: Tuple[str, ...]
    relations: Tuple[str, ...]
    arg_fun: Dict[str, FrozenSet[str]]

    @classmethod
    def create(
        cls,
        arguments: Iterable[str],
        relations: Iterable[str],
        arg_fun: Mapping[str, Iterable[str]],
    ) -> "LanguageSignature":
        """
        构造签名，集合按字典序保存

        Args:
            arguments: 论元名
            relations: 关系名
            arg_fun: 关系到论元集合的映射

        Returns:
            签名实例（未校验，校验见 validate_signature）
        """
        return cls(
            arguments=tuple(sorted({sys.intern(a) for a in arguments})),
            relations=tuple(sorted({sys.intern(r) for r in relations})),
            arg_fun={sys.intern(r): frozenset(sys.intern(a) for a in args) for r, args in arg_fun.items()},
        )

    def arity(self, relation: str) -> FrozenSet[str]:
        """返回关系的论元集合 ar(r)"""
        return self.arg_fun[relation]

    def relations_over(self, arguments: FrozenSet[str]) -> Tuple[str, ...]:
        """返回论元集合恰为 arguments 的全部关系，按字典序"""
        return tuple(r for r in self.relations if self.arg_fun.get(r) == arguments)

    def argument_sets(self) -> List[FrozenSet[str]]:
        """返回所有出现过的论元集合，按排序后的论元元组排序"""
        sets = {self.arg_fun[r] for r in self.relations if r in self.arg_fun}
        return sorted(sets, key=lambda s: (len(s), sorted(s)))

    def is_argument(self, name: str) -> bool:
        return name in self.arguments

    def is_relation(self, name: str) -> bool:
        return name in self.relations


def validate_signature(sig: LanguageSignature) -> List[str]:
    """
    检查签名的全部不变量

    Args:
        sig: 待检查的签名

    Returns:
        违例列表，为空表示通过；每条违例都指明出问题的符号
    """
    violations = []
    if not sig.arguments:
        violations.append("signature has no arguments")
    if not sig.relations:
        violations.append("signature has no relations")
    for name in sig.arguments + sig.relations:
        if not SYMBOL_PATTERN.fullmatch(name):
            violations.append(f"{name}: invalid symbol name")
    for name in sorted(set(sig.arguments) & set(sig.relations)):
        violations.append(f"{name}: used both as argument and relation")
    for relation in sig.relations:
        if not IDENTIFIER_PATTERN.fullmatch(relation):
            violations.append(f"{relation}: relation names must start with a letter or underscore")
        if relation not in sig.arg_fun:
            violations.append(f"{relation}: argument function undefined")
            continue
        args = sig.arg_fun[relation]
        if not args:
            violations.append(f"{relation}: empty argument set")
        for arg in sorted(args):
            if arg not in sig.arguments:
                violations.append(f"{relation}: unknown argument {arg}")
    for relation in sorted(set(sig.arg_fun) - set(sig.relations)):
        violations.append(f"{relation}: argument function maps an undeclared relation")
    return violations
