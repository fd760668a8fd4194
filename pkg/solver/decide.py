import itertools
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import FrozenSet, List, Optional, Tuple

from logic.fragments import FragmentClass, classify_fragment
from logic.normal_form import DerivedRelation, NormalFormSentence, rename_apart
from overlap.graphs import extract_schema, is_overlapping
from skolem.coupling import FormulaFunction
from skolem.schema import Schema, group_by_arguments
from solver.certificate import Certificate, ConflictRecord, WitnessRecord
from solver.propositional import bool_sat
from solver.witness import WitnessSet, witnesses
from utils.errors import FragmentError, NormalFormError

logger = logging.getLogger(__name__)

SAT = "SAT"
UNSAT = "UNSAT"


@dataclass(frozen=True)
class Conflict:
    """见证集中某个重叠模式子集的派生关系合取不可满足"""

    arguments: FrozenSet[str]
    schemas: Tuple[Schema, ...]
    relations: Tuple[DerivedRelation, ...]

    def conjunction_text(self) -> str:
        return " & ".join(relation.text() for relation in self.relations)

    def to_record(self) -> ConflictRecord:
        return ConflictRecord(
            args=sorted(self.arguments),
            schemas=[schema.text() for schema in self.schemas],
            conjunction=self.conjunction_text(),
        )


@dataclass(frozen=True)
class Verdict:
    """判定结果：SAT 带通过的见证集，UNSAT 带每个见证集的不一致记录"""

    value: str
    witness: Optional[WitnessSet] = None
    records: List[Tuple[WitnessSet, Conflict]] = field(default_factory=list)

    @property
    def is_sat(self) -> bool:
        return self.value == SAT

    def to_certificate(self) -> Certificate:
        if self.is_sat:
            return Certificate(verdict="sat", witnesses=[WitnessRecord(leaves=self.witness.texts())])
        return Certificate(
            verdict="unsat",
            witnesses=[WitnessRecord(leaves=w.texts(), conflict=c.to_record()) for w, c in self.records],
        )


def build_formula_function(witness: WitnessSet) -> FormulaFunction:
    """
    把见证集的每个模式映射到它的派生关系

    Args:
        witness: 叶子已改名分离的见证集

    Returns:
        覆盖 F 的单射公式函数
    """
    entries = {}
    for leaf in witness.leaves:
        schema = extract_schema(leaf)
        if schema in entries:
            raise NormalFormError(f"duplicate schema after renaming: {schema.text()}")
        entries[schema] = leaf.body.relation
    return FormulaFunction(entries)


def find_conflict(witness: WitnessSet) -> Optional[Conflict]:
    """
    在见证集中寻找重叠且不一致的模式子集

    对每个论元集合 A，按基数从小到大检查 Sch(A) 的非空子集 S；重叠性在完整的 A 上判定。

    Args:
        witness: 见证集

    Returns:
        第一个冲突，没有时返回 None
    """
    f = build_formula_function(witness)
    for arguments, group in group_by_arguments(f.entries).items():
        for size in range(1, len(group) + 1):
            for subset in itertools.combinations(group, size):
                relations = tuple(f[schema] for schema in subset)
                if bool_sat(relations):
                    continue
                if is_overlapping(subset, arguments):
                    return Conflict(arguments, subset, relations)
    return None


def decide_sat(nf: NormalFormSentence, minimal_only: bool = False, jobs: int = 1) -> Verdict:
    """
    判定 OB 句子的可满足性

    Args:
        nf: 单绑定片段的范式句子
        minimal_only: 只检查极小见证集
        jobs: 并行检查见证集的线程数，结果与顺序扫描一致

    Returns:
        带证书的判定结果
    """
    fragment = classify_fragment(nf)
    if fragment != FragmentClass.OB:
        raise FragmentError(f"fragment not OB: {fragment.value}")
    nf = rename_apart(nf)
    candidates = witnesses(nf, minimal_only)
    records: List[Tuple[WitnessSet, Conflict]] = []
    if jobs > 1:
        candidates = list(candidates)
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(find_conflict, candidates))
    else:
        results = None
    for index, witness in enumerate(candidates):
        conflict = results[index] if results is not None else find_conflict(witness)
        if conflict is None:
            logger.info("witness %s is consistent: SAT", witness.texts())
            return Verdict(SAT, witness=witness)
        logger.debug("witness %s inconsistent over %s", witness.texts(), sorted(conflict.arguments))
        records.append((witness, conflict))
    logger.info("all %d witnesses inconsistent: UNSAT", len(records))
    return Verdict(UNSAT, records=records)
