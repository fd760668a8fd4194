import logging
from typing import Dict, List, Optional, Sequence

from logic.formula import EXISTS, And, Formula, Not, Or, Rel
from logic.normal_form import Block, BindingForm, Conj, Disj, NormalFormSentence, iter_leaves
from logic.formula import size as formula_size
from model.assignment import Assignment
from model.signature import LanguageSignature
from model.structure import RelationalStructure, canonical_domain
from solver.cnf import CnfBuilder, Node, atom, conjunction, disjunction, negate
from solver.model_finder import BaseModelFinder
from utils.errors import ResourceLimitError

logger = logging.getLogger(__name__)


class GroundedModelFinder(BaseModelFinder):
    """把句子在规范论域上展开为命题公式，交给 SAT 求解器"""

    def _estimate(self, nf: NormalFormSentence, order: int) -> int:
        total = 0
        for block in nf.leaves():
            body = sum(formula_size(form.relation.body) for form in iter_leaves(block.body))
            total += order ** len(block.prefix) * body
        return total

    def _ground_body(self, body: Formula, binding: Dict[str, str], env: Dict[str, str]) -> Node:
        if isinstance(body, Rel):
            tuple_function = Assignment({a: env[binding[a]] for a in body.arguments})
            return atom((body.name, tuple_function))
        if isinstance(body, Not):
            return negate(self._ground_body(body.child, binding, env))
        if isinstance(body, And):
            return conjunction([self._ground_body(body.left, binding, env), self._ground_body(body.right, binding, env)])
        if isinstance(body, Or):
            return disjunction([self._ground_body(body.left, binding, env), self._ground_body(body.right, binding, env)])
        raise TypeError(f"not propositional: {body!r}")

    def _ground_tree(self, tree, env: Dict[str, str]) -> Node:
        if isinstance(tree, Conj):
            return conjunction([self._ground_tree(tree.left, env), self._ground_tree(tree.right, env)])
        if isinstance(tree, Disj):
            return disjunction([self._ground_tree(tree.left, env), self._ground_tree(tree.right, env)])
        form: BindingForm = tree
        return self._ground_body(form.relation.body, form.binding.as_dict(), env)

    def _ground_block(self, block: Block, domain: Sequence[str], position: int, env: Dict[str, str]) -> Node:
        if position == len(block.prefix):
            return self._ground_tree(block.body, env)
        kind, variable = block.prefix.quantifications[position]
        children: List[Node] = [
            self._ground_block(block, domain, position + 1, {**env, variable: d}) for d in domain
        ]
        return disjunction(children) if kind == EXISTS else conjunction(children)

    def _ground_sentence(self, tree, domain: Sequence[str]) -> Node:
        if isinstance(tree, Conj):
            return conjunction([self._ground_sentence(tree.left, domain), self._ground_sentence(tree.right, domain)])
        if isinstance(tree, Disj):
            return disjunction([self._ground_sentence(tree.left, domain), self._ground_sentence(tree.right, domain)])
        return self._ground_block(tree, domain, 0, {})

    def find_of_order(
        self,
        nf: NormalFormSentence,
        signature: LanguageSignature,
        order: int,
    ) -> Optional[RelationalStructure]:
        estimate = self._estimate(nf, order)
        if estimate > self.cap:
            logger.warning("grounding refused at order %d: %d nodes", order, estimate)
            raise ResourceLimitError(f"grounding at order {order}", estimate, self.cap)
        domain = canonical_domain(order)
        builder = CnfBuilder()
        builder.require(self._ground_sentence(nf.tree, domain))
        true_atoms = builder.solve()
        if true_atoms is None:
            return None
        relations: Dict[str, List[Assignment]] = {}
        for name, tuple_function in sorted(true_atoms, key=lambda key: (key[0], key[1].sort_key())):
            relations.setdefault(name, []).append(tuple_function)
        return RelationalStructure.create(signature, domain, relations)
