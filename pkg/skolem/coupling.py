import itertools
import logging
import random
from dataclasses import dataclass
from typing import Dict, FrozenSet, Hashable, Iterable, Iterator, Sequence, Set, Tuple

from logic.normal_form import DerivedRelation
from model.assignment import EMPTY_ASSIGNMENT, Assignment
from model.structure import RelationalStructure, all_tuple_functions
from skolem.schema import Schema, group_by_arguments
from skolem.skolem_map import SkolemMap, random_skolem_map, skolem_satisfies
from utils.errors import CouplingError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CouplingMap:
    """耦合映射 γ：为每个模式指定一个共同载体上的 Skolem 映射"""

    entries: Dict[Schema, SkolemMap]

    def __post_init__(self):
        carriers = {frozenset(theta.carrier) for theta in self.entries.values()}
        if len(carriers) > 1:
            raise CouplingError("coupling map entries use different carriers")
        for schema, theta in self.entries.items():
            if theta.prefix != schema.prefix:
                raise CouplingError(f"skolem map prefix differs from schema prefix of {schema.text()}")

    @property
    def carrier(self) -> Tuple[Hashable, ...]:
        for theta in self.entries.values():
            return theta.carrier
        return ()

    @property
    def schemas(self) -> FrozenSet[Schema]:
        return frozenset(self.entries)

    def __getitem__(self, schema: Schema) -> SkolemMap:
        return self.entries[schema]


@dataclass(frozen=True)
class FormulaFunction:
    """公式函数 f：模式 → 派生关系，满足 ar(f(σ)) = ar(♭(σ))"""

    entries: Dict[Schema, DerivedRelation]

    def __post_init__(self):
        for schema, relation in self.entries.items():
            if relation.arguments != schema.arguments:
                raise CouplingError(
                    f"argument-set mismatch: {relation.text()} over {sorted(relation.arguments)} "
                    f"for schema over {sorted(schema.arguments)}"
                )

    @property
    def schemas(self) -> FrozenSet[Schema]:
        return frozenset(self.entries)

    def __getitem__(self, schema: Schema) -> DerivedRelation:
        return self.entries[schema]

    def __len__(self) -> int:
        return len(self.entries)


def coupling_satisfies(structure: RelationalStructure, gamma: CouplingMap, f: FormulaFunction) -> bool:
    """R 在 γ 下满足 f：每个模式的 ♭(σ)f(σ) 都被 γ(σ) 满足"""
    if gamma.schemas != f.schemas:
        raise CouplingError("domain mismatch between coupling map and formula function")
    return all(
        skolem_satisfies(structure, EMPTY_ASSIGNMENT, gamma[schema], schema.binding.wrap(f[schema].body))
        for schema in f.entries
    )


def _shared_arguments(schemas: Sequence[Schema], arguments: FrozenSet[str]) -> None:
    argument_sets = {schema.arguments for schema in schemas}
    if len(argument_sets) > 1:
        raise CouplingError("argument-set mismatch: schemas do not share one argument set")
    if argument_sets and not arguments <= next(iter(argument_sets)):
        raise CouplingError(f"argument-set mismatch: {sorted(arguments)} not inside the schema arguments")


def entanglement_set(
    gamma: CouplingMap,
    schemas: Iterable[Schema],
    arguments: Iterable[str],
) -> FrozenSet[Assignment]:
    """
    计算 γ 在 (S′, A′) 上的纠缠集合

    Args:
        gamma: 耦合映射
        schemas: 模式子集 S′ ⊆ dom(γ)，共享论元集合 A
        arguments: 论元子集 A′ ⊆ A

    Returns:
        A′ 上所有能被 S′ 中每个 Skolem 映射同时实现的元组函数
    """
    schemas = list(schemas)
    arguments = frozenset(arguments)
    unknown = [s for s in schemas if s not in gamma.entries]
    if unknown:
        raise CouplingError(f"domain mismatch: schema {unknown[0].text()} not in the coupling map")
    _shared_arguments(schemas, arguments)
    result: Set[Assignment] = set(all_tuple_functions(arguments, gamma.carrier))
    for schema in schemas:
        binding = schema.binding.as_dict()
        image = {Assignment({a: chi[binding[a]] for a in arguments}) for chi in gamma[schema].range()}
        result &= image
        if not result:
            break
    return frozenset(result)


def _subsets(items: Sequence) -> Iterator[Tuple]:
    for size in range(len(items) + 1):
        yield from itertools.combinations(items, size)


def preorder_leq(gamma2: CouplingMap, gamma1: CouplingMap, schemas: Iterable[Schema]) -> bool:
    """
    γ2 ⊑ γ1：在每个 (S′, A′) 上，γ2 纠缠则 γ1 也纠缠

    Args:
        gamma2: 较弱纠缠的一侧
        gamma1: 至少同样纠缠的一侧
        schemas: 模式集合 S = dom(γ1) = dom(γ2)

    Returns:
        真值
    """
    schemas = frozenset(schemas)
    if gamma1.schemas != schemas or gamma2.schemas != schemas:
        raise CouplingError("domain mismatch: coupling maps are not defined on the schema set")
    for arguments, group in group_by_arguments(sorted(schemas, key=Schema.text)).items():
        for subset in _subsets(group):
            for argument_subset in _subsets(sorted(arguments)):
                if entanglement_set(gamma2, subset, argument_subset) and not entanglement_set(
                    gamma1, subset, argument_subset
                ):
                    logger.debug("preorder fails at %s over %s", [s.text() for s in subset], argument_subset)
                    return False
    return True


def random_coupling_map(schemas: Iterable[Schema], carrier: Sequence[Hashable], rng: random.Random) -> CouplingMap:
    """为每个模式独立抽取随机 Skolem 映射"""
    return CouplingMap({schema: random_skolem_map(schema.prefix, carrier, rng) for schema in schemas})
