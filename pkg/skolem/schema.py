from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Mapping

from logic.normal_form import BindPrefix, QuantPrefix
from utils.errors import NormalFormError


@dataclass(frozen=True)
class Schema:
    """模式 σ = (℘, ♭)：单绑定块去掉派生关系后的骨架"""

    prefix: QuantPrefix
    binding: BindPrefix

    def __post_init__(self):
        if set(self.prefix.variables) != set(self.binding.variables):
            raise NormalFormError(
                "variable-set mismatch: prefix binds "
                f"{sorted(self.prefix.variables)}, binding uses {sorted(self.binding.variables)}"
            )

    @property
    def arguments(self) -> FrozenSet[str]:
        return self.binding.arguments

    @property
    def variables(self) -> FrozenSet[str]:
        return frozenset(self.prefix.variables)

    @property
    def existential_arguments(self) -> FrozenSet[str]:
        """∃(σ)：绑定到存在变量的论元"""
        existentials = self.prefix.existentials
        return frozenset(a for a, v in self.binding.bindings if v in existentials)

    @property
    def universal_arguments(self) -> FrozenSet[str]:
        universals = self.prefix.universals
        return frozenset(a for a, v in self.binding.bindings if v in universals)

    def collapses(self, first: str, second: str) -> bool:
        """first ≈σ second：两个论元绑定到同一个变量"""
        return self.binding.variable_of(first) == self.binding.variable_of(second)

    def depends(self, first: str, second: str) -> bool:
        """first ⇝σ second：由 ⇝℘ 经 ♭ 提升而来"""
        return self.prefix.depends(self.binding.variable_of(first), self.binding.variable_of(second))

    def rename(self, mapping: Mapping[str, str]) -> "Schema":
        return Schema(self.prefix.rename(mapping), self.binding.rename(mapping))

    def text(self) -> str:
        return f"{self.prefix.text()} {self.binding.text()}"


def group_by_arguments(schemas: Iterable[Schema]) -> Dict[FrozenSet[str], List[Schema]]:
    """按论元集合分组（Sch(A)），组内保持输入顺序，组按论元排序"""
    groups: Dict[FrozenSet[str], List[Schema]] = {}
    for schema in schemas:
        groups.setdefault(schema.arguments, []).append(schema)
    return dict(sorted(groups.items(), key=lambda item: (len(item[0]), sorted(item[0]))))
