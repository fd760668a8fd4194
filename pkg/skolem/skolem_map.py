import itertools
import logging
import random
from dataclasses import dataclass
from typing import Callable, Dict, Hashable, Iterator, List, Mapping, Optional, Sequence, Tuple

from logic.formula import Formula, free_placeholders, make_quantifier
from logic.normal_form import QuantPrefix
from model.assignment import Assignment
from model.structure import RelationalStructure, all_tuple_functions
from semantics.evaluator import evaluate
from utils.config import get_settings
from utils.errors import EvaluationError, ResourceLimitError, SkolemError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SkolemMap:
    """Skolem 映射 θ：全称变量上的赋值 → var(℘) 上的完整赋值，用有限表表示"""

    prefix: QuantPrefix
    carrier: Tuple[Hashable, ...]
    table: Dict[Assignment, Assignment]

    @classmethod
    def from_functions(
        cls,
        prefix: QuantPrefix,
        carrier: Sequence[Hashable],
        choose: Mapping[str, Callable[[Assignment], Hashable]],
    ) -> "SkolemMap":
        """
        用 Python 函数为每个存在变量给出取值，构造完整的表

        Args:
            prefix: 量化前缀
            carrier: 载体集合
            choose: 存在变量 → (全称赋值 → 值) 的函数

        Returns:
            Skolem 映射（不保证合法，见 validate_skolem_map）
        """
        table = {}
        for chi in all_tuple_functions(prefix.universals, carrier):
            output = dict(chi.to_dict())
            for variable in prefix.existentials:
                output[variable] = choose[variable](chi)
            table[chi] = Assignment(output)
        return cls(prefix, tuple(carrier), table)

    def __call__(self, chi: Assignment) -> Assignment:
        return self.table[chi]

    def range(self) -> List[Assignment]:
        return [self.table[chi] for chi in sorted(self.table)]


def validate_skolem_map(theta: SkolemMap) -> List[str]:
    """
    检查恒等条件与依赖条件

    Args:
        theta: 待检查的 Skolem 映射

    Returns:
        违例列表，为空表示合法；每条违例给出 (χ1, χ2, v)
    """
    prefix = theta.prefix
    expected = set(all_tuple_functions(prefix.universals, theta.carrier))
    missing = expected - set(theta.table)
    if missing:
        raise SkolemError(f"table not total: {len(missing)} of {len(expected)} inputs missing, e.g. {min(missing)!r}")
    violations = []
    carrier = set(theta.carrier)
    for chi in sorted(theta.table):
        if chi not in expected:
            violations.append(f"input {chi!r} is not an assignment of the universal variables")
            continue
        output = theta.table[chi]
        if output.domain != frozenset(prefix.variables):
            violations.append(f"output {output!r} for {chi!r} does not cover exactly {sorted(prefix.variables)}")
            continue
        for variable in sorted(prefix.universals):
            if output[variable] != chi[variable]:
                violations.append(f"identity violated on universal {variable}: input {chi!r}, output {output!r}")
        for variable, value in output.items():
            if value not in carrier:
                violations.append(f"value {value} of {variable} outside the carrier")
    if violations:
        return violations
    for variable in prefix.variables:
        if variable not in prefix.existentials:
            continue
        dependencies = prefix.dependencies(variable)
        seen: Dict[Assignment, Tuple[Assignment, Hashable]] = {}
        for chi in sorted(theta.table):
            key = chi.restrict(dependencies)
            value = theta.table[chi][variable]
            if key not in seen:
                seen[key] = (chi, value)
                continue
            first, first_value = seen[key]
            if first_value != value:
                violations.append(
                    f"dependence violated for {variable}: {first!r} and {chi!r} agree on "
                    f"{sorted(dependencies)} but give {first_value} and {value}"
                )
                break
    return violations


def skolem_satisfies(
    structure: RelationalStructure,
    chi: Assignment,
    theta: SkolemMap,
    psi: Formula,
) -> bool:
    """
    R 在 χ 与 θ 下满足 ψ：对 θ 值域中每个与 χ 相容的赋值，ψ 都成立

    Args:
        structure: 结构，论域必须等于 θ 的载体
        chi: 初始赋值
        theta: Skolem 映射
        psi: 量化前缀之后的公式

    Returns:
        真值
    """
    if set(theta.carrier) != set(structure.domain):
        raise SkolemError(
            f"carrier mismatch: skolem map over {sorted(map(str, theta.carrier))}, structure over {list(structure.domain)}"
        )
    closed = psi
    for kind, variable in reversed(theta.prefix.quantifications):
        closed = make_quantifier(kind, variable, closed)
    missing = free_placeholders(closed) - chi.domain
    if missing:
        raise EvaluationError(f"unbound placeholder: {', '.join(sorted(missing))}")
    for rho in theta.range():
        if not rho.agrees_with(chi):
            continue
        if not evaluate(structure, chi.merge(rho), psi):
            return False
    return True


def count_skolem_maps(prefix: QuantPrefix, carrier_size: int) -> int:
    """∏_{v ∈ ∃(℘)} |D|^(|D|^|Dep(v)|)"""
    count = 1
    for variable in prefix.variables:
        if variable in prefix.existentials:
            count *= carrier_size ** (carrier_size ** len(prefix.dependencies(variable)))
    return count


def _existential_slots(prefix: QuantPrefix, carrier: Sequence[Hashable]):
    slots = []
    for variable in prefix.variables:
        if variable in prefix.existentials:
            inputs = list(all_tuple_functions(prefix.dependencies(variable), carrier))
            slots.append((variable, prefix.dependencies(variable), inputs))
    return slots


def _assemble(prefix: QuantPrefix, carrier: Tuple[Hashable, ...], slots, choices) -> SkolemMap:
    lookup = {}
    for (variable, _, inputs), values in zip(slots, choices):
        lookup[variable] = dict(zip(inputs, values))
    table = {}
    for chi in all_tuple_functions(prefix.universals, carrier):
        output = chi.to_dict()
        for variable, dependencies, _ in slots:
            output[variable] = lookup[variable][chi.restrict(dependencies)]
        table[chi] = Assignment(output)
    return SkolemMap(prefix, carrier, table)


def enumerate_skolem_maps(
    prefix: QuantPrefix,
    carrier: Sequence[Hashable],
    cap: Optional[int] = None,
) -> Iterator[SkolemMap]:
    """
    枚举全部合法的 Skolem 映射，每个恰好一次

    Args:
        prefix: 量化前缀
        carrier: 非空载体
        cap: 数量上限，默认读取 SKOLEM_MAP_CAP

    Returns:
        Skolem 映射流
    """
    carrier = tuple(carrier)
    if not carrier:
        raise SkolemError("carrier must be non-empty")
    cap = get_settings().skolem_map_cap if cap is None else cap
    count = count_skolem_maps(prefix, len(carrier))
    if count > cap:
        logger.warning("skolem map enumeration refused: %d maps for %s", count, prefix.text())
        raise ResourceLimitError("skolem map enumeration", count, cap)
    slots = _existential_slots(prefix, carrier)
    per_slot = [itertools.product(carrier, repeat=len(inputs)) for _, _, inputs in slots]
    for choices in itertools.product(*per_slot):
        yield _assemble(prefix, carrier, slots, choices)


def random_skolem_map(prefix: QuantPrefix, carrier: Sequence[Hashable], rng: random.Random) -> SkolemMap:
    """每个独立的存在选择都均匀随机抽取"""
    carrier = tuple(carrier)
    slots = _existential_slots(prefix, carrier)
    choices = [tuple(rng.choice(carrier) for _ in inputs) for _, _, inputs in slots]
    return _assemble(prefix, carrier, slots, choices)
