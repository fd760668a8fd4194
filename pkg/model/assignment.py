from typing import Dict, FrozenSet, Hashable, Iterable, Iterator, Mapping, Optional, Tuple

from utils.errors import AssignmentError, InputError


class Assignment:
    """不可变的部分赋值 χ：占位符（论元或变量）到值的映射

    元组函数就是定义域恰为 ar(r) 的赋值。
    """

    __slots__ = ("_entries", "_hash")

    def __init__(self, entries: Optional[Mapping[str, Hashable]] = None):
        self._entries: Dict[str, Hashable] = dict(entries or {})
        self._hash: Optional[int] = None

    @property
    def domain(self) -> FrozenSet[str]:
        return frozenset(self._entries)

    def get(self, placeholder: str, default: Optional[Hashable] = None) -> Optional[Hashable]:
        return self._entries.get(placeholder, default)

    def items(self) -> Tuple[Tuple[str, Hashable], ...]:
        """按占位符字典序返回条目"""
        return tuple(sorted(self._entries.items(), key=lambda item: item[0]))

    def to_dict(self) -> Dict[str, Hashable]:
        return dict(self._entries)

    def extend(self, placeholders: Iterable[str], value: Hashable) -> "Assignment":
        """
        返回 χ[P ↦ d]：P 中每个占位符都取值 d，其余与 χ 相同

        Args:
            placeholders: 占位符集合 P
            value: 值 d

        Returns:
            新的赋值，原赋值不变
        """
        entries = dict(self._entries)
        for placeholder in placeholders:
            entries[placeholder] = value
        return Assignment(entries)

    def restrict(self, placeholders: Iterable[str]) -> "Assignment":
        """
        返回 χ|P

        Args:
            placeholders: 占位符集合 P，必须包含于 dom(χ)

        Returns:
            定义域恰为 P 的赋值
        """
        wanted = set(placeholders)
        missing = wanted - set(self._entries)
        if missing:
            raise AssignmentError(f"cannot restrict: {', '.join(sorted(missing))} not in domain")
        return Assignment({p: self._entries[p] for p in wanted})

    def merge(self, other: "Assignment") -> "Assignment":
        """返回 other 覆盖 self 后的赋值"""
        entries = dict(self._entries)
        entries.update(other._entries)
        return Assignment(entries)

    def agrees_with(self, other: "Assignment") -> bool:
        """两个赋值在公共定义域上取值相同"""
        return all(other._entries[p] == v for p, v in self._entries.items() if p in other._entries)

    def rename(self, mapping: Mapping[str, str]) -> "Assignment":
        """按 mapping 重命名占位符（未出现在 mapping 中的保持不变）"""
        return Assignment({mapping.get(p, p): v for p, v in self._entries.items()})

    def __getitem__(self, placeholder: str) -> Hashable:
        return self._entries[placeholder]

    def __contains__(self, placeholder: object) -> bool:
        return placeholder in self._entries

    def __iter__(self) -> Iterator[str]:
        return iter(sorted(self._entries))

    def __len__(self) -> int:
        return len(self._entries)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Assignment):
            return NotImplemented
        return self._entries == other._entries

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._entries.items()))
        return self._hash

    def __lt__(self, other: "Assignment") -> bool:
        return self.sort_key() < other.sort_key()

    def sort_key(self) -> Tuple[Tuple[str, str], ...]:
        return tuple((p, str(v)) for p, v in self.items())

    def __repr__(self) -> str:
        body = ", ".join(f"{p}↦{v}" for p, v in self.items())
        return "{" + body + "}"


EMPTY_ASSIGNMENT = Assignment()

# 元组函数 t : ar(r) → D
TupleFunction = Assignment


def extend_assignment(chi: Assignment, placeholders: Iterable[str], value: Hashable) -> Assignment:
    """χ[P ↦ d]"""
    return chi.extend(placeholders, value)


def restrict_assignment(chi: Assignment, placeholders: Iterable[str]) -> Assignment:
    """χ|P，P ⊄ dom(χ) 时抛出 AssignmentError"""
    return chi.restrict(placeholders)


def parse_assignment_literal(text: str) -> Assignment:
    """
    解析 `name=element` 逗号分隔的赋值字面量

    Args:
        text: 例如 "x=d0,b=d1"

    Returns:
        对应的赋值
    """
    entries = {}
    for part in (p.strip() for p in text.split(",")):
        if not part:
            continue
        name, sep, value = part.partition("=")
        if not sep or not name.strip() or not value.strip():
            raise InputError(f"malformed assignment entry: {part!r}")
        entries[name.strip()] = value.strip()
    return Assignment(entries)
