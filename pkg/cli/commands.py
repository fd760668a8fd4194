import argparse
import logging
import random
import sys
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence

from bisim.bisimulation import are_bisimilar
from bisim.distinguish import find_distinguishing_sentence
from logic.fragments import FragmentClass, classify_fragment
from logic.normal_form import NormalFormSentence, print_normal_form, rename_apart, to_binding_normal_form
from logic.parser import read_formula_file
from logic.printer import print_formula
from model.assignment import EMPTY_ASSIGNMENT, parse_assignment_literal
from model.files import format_structure, read_signature_file, read_structure_file
from model.signature import LanguageSignature, validate_signature
from model.structure import validate_structure
from overlap.graphs import (
    DependenceGraph,
    dependence_cycle,
    export_dot,
    extract_schema,
    is_acyclic,
    is_conflicting,
)
from semantics.evaluator import evaluate
from skolem.coupling import entanglement_set, random_coupling_map
from skolem.schema import group_by_arguments
from skolem.skolem_map import validate_skolem_map
from skolem.table_file import read_skolem_table
from solver.bounds import fmp_parameters, format_fmp_bound
from solver.decide import decide_sat
from solver.model_finder import find_model_bounded
from solver.propositional import interpolate_blocks
from utils.config import get_settings
from utils.errors import BindingFormsError, FragmentError, InputError, InterpolationError, SemanticError
from utils.logger import setup_logging

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_SEMANTIC = 2
EXIT_TRUE = 10
EXIT_FALSE = 20


class _ArgumentParser(argparse.ArgumentParser):
    """用法错误抛出 InputError，而不是直接退出进程"""

    def error(self, message):
        raise InputError(f"usage: {message}")


def _verdict(value: bool) -> int:
    return EXIT_TRUE if value else EXIT_FALSE


def _arg_order(args) -> Optional[List[str]]:
    if not args.arg_order:
        return None
    return [a.strip() for a in args.arg_order.split(",") if a.strip()]


def _load_signature(path: str) -> LanguageSignature:
    signature = read_signature_file(path)
    violations = validate_signature(signature)
    if violations:
        raise SemanticError(f"invalid signature {path}: " + "; ".join(violations))
    return signature


def _load_structure(path: str, signature: LanguageSignature):
    structure = read_structure_file(path, signature)
    violations = validate_structure(signature, structure)
    if violations:
        raise SemanticError(f"invalid structure {path}: " + "; ".join(violations))
    return structure


def _load_formula(path: str, signature: LanguageSignature, args):
    return read_formula_file(path, signature, _arg_order(args))


def _load_normal_form(path: str, signature: LanguageSignature, args) -> NormalFormSentence:
    return to_binding_normal_form(_load_formula(path, signature, args))


def cmd_check(args) -> int:
    """校验签名、结构、公式或 Skolem 表文件"""
    if not any((args.sig, args.str, args.formula, args.table)):
        raise InputError("usage: check needs at least one of --sig, --str, --formula, --table")
    if (args.str or args.formula) and not args.sig:
        raise InputError("usage: --str and --formula need --sig")
    if args.sig:
        _load_signature(args.sig)
        print(f"{args.sig}: ok")
    if args.str:
        _load_structure(args.str, read_signature_file(args.sig))
        print(f"{args.str}: ok")
    if args.formula:
        _load_formula(args.formula, read_signature_file(args.sig), args)
        print(f"{args.formula}: ok")
    if args.table:
        return cmd_skolem_check(args)
    return EXIT_OK


def cmd_classify(args) -> int:
    signature = _load_signature(args.sig)
    nf = _load_normal_form(args.formula, signature, args)
    print(classify_fragment(nf).value)
    return EXIT_OK


def cmd_eval(args) -> int:
    """在结构上求值公式，true 退出 10，false 退出 20"""
    signature = _load_signature(args.sig)
    structure = _load_structure(args.str, signature)
    phi = _load_formula(args.formula, signature, args)
    chi = parse_assignment_literal(args.assign) if args.assign else EMPTY_ASSIGNMENT
    value = evaluate(structure, chi, phi)
    print("true" if value else "false")
    return _verdict(value)


def cmd_sat(args) -> int:
    """判定 OB 句子的可满足性并输出证书"""
    signature = _load_signature(args.sig)
    nf = _load_normal_form(args.formula, signature, args)
    verdict = decide_sat(nf, minimal_only=args.minimal, jobs=args.jobs)
    text = verdict.to_certificate().to_json()
    print(text)
    if args.certificate:
        Path(args.certificate).write_text(text + "\n", encoding="utf-8")
        logger.info("certificate written to %s", args.certificate)
    return _verdict(verdict.is_sat)


def cmd_model(args) -> int:
    """有界模型搜索，找到模型时输出 .str 文本"""
    signature = _load_signature(args.sig)
    nf = _load_normal_form(args.formula, signature, args)
    structure = find_model_bounded(nf, args.max_order, signature, strategy=args.strategy)
    if structure is None:
        print(f"no model of order <= {args.max_order}", file=sys.stderr)
        return EXIT_FALSE
    sys.stdout.write(format_structure(structure))
    return EXIT_TRUE


def cmd_bisim(args) -> int:
    """判定单绑定互模拟，不互模拟时给出区分句子"""
    signature = _load_signature(args.sig)
    first = _load_structure(args.str1, signature)
    second = _load_structure(args.str2, signature)
    if are_bisimilar(first, second):
        print("bisimilar")
        return EXIT_TRUE
    # 区分句子搜索结束后才输出
    sentence = find_distinguishing_sentence(first, second, args.depth)
    print("not bisimilar")
    if sentence is not None:
        print(print_formula(sentence))
    return EXIT_FALSE


def cmd_graphs(args) -> int:
    """为每个论元分组导出坍缩图与依赖图"""
    signature = _load_signature(args.sig)
    nf = rename_apart(_load_normal_form(args.formula, signature, args))
    schemas = [extract_schema(leaf) for leaf in nf.leaves()]
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for arguments, group in group_by_arguments(schemas).items():
        name = "_".join(sorted(arguments))
        dependence = DependenceGraph(group, arguments)
        (out / f"{name}_collapsing.dot").write_text(export_dot(dependence.collapsing), encoding="utf-8")
        (out / f"{name}_dependence.dot").write_text(export_dot(dependence), encoding="utf-8")
        if is_conflicting(dependence.collapsing):
            status = "conflicting"
        elif not is_acyclic(dependence):
            cycle = dependence_cycle(dependence)
            status = "cycle " + " -> ".join(dependence.label(v) for v in cycle)
        else:
            status = "overlapping"
        print(f"{','.join(sorted(arguments))}: {len(group)} schemas, {status}")
    return EXIT_OK


def cmd_normalize(args) -> int:
    signature = _load_signature(args.sig)
    print(print_normal_form(_load_normal_form(args.formula, signature, args)))
    return EXIT_OK


def _single_block(path: str, signature: LanguageSignature, args):
    nf = _load_normal_form(path, signature, args)
    leaves = nf.leaves()
    if len(leaves) != 1:
        raise InterpolationError(f"{path}: expected a single block, found {len(leaves)}")
    return leaves[0]


def cmd_interpolate(args) -> int:
    """单块句子之间的基本插值"""
    signature = _load_signature(args.sig)
    first = _single_block(args.left, signature, args)
    second = _single_block(args.right, signature, args)
    print(interpolate_blocks(first, second).text())
    return EXIT_OK


def cmd_skolem_check(args) -> int:
    """校验 Skolem 表：合法退出 0，违例写到 stderr 并退出 2"""
    theta = read_skolem_table(args.table)
    violations = validate_skolem_map(theta)
    for violation in violations:
        print(violation, file=sys.stderr)
    if violations:
        return EXIT_SEMANTIC
    print(f"{args.table}: valid skolem map for {theta.prefix.text()}")
    return EXIT_OK


def cmd_entangle(args) -> int:
    """对每个论元分组抽样随机耦合映射，统计纠缠的比例"""
    signature = _load_signature(args.sig)
    nf = _load_normal_form(args.formula, signature, args)
    if classify_fragment(nf) != FragmentClass.OB:
        raise FragmentError(f"fragment not OB: {classify_fragment(nf).value}")
    schemas = [extract_schema(leaf) for leaf in rename_apart(nf).leaves()]
    rng = random.Random(get_settings().default_seed if args.seed is None else args.seed)
    carrier = [f"e{i}" for i in range(args.carrier)]
    for arguments, group in group_by_arguments(schemas).items():
        entangled = 0
        for _ in range(args.samples):
            gamma = random_coupling_map(group, carrier, rng)
            if entanglement_set(gamma, group, arguments):
                entangled += 1
        print(f"{','.join(sorted(arguments))}: entangled {entangled}/{args.samples}")
    return EXIT_OK


def cmd_fmp_bound(args) -> int:
    """输出有限模型界"""
    if args.formula:
        if not args.sig:
            raise InputError("usage: --formula needs --sig")
        n, h, k = fmp_parameters(_load_normal_form(args.formula, _load_signature(args.sig), args))
    elif None in (args.n, args.h, args.k):
        raise InputError("usage: fmp-bound needs --formula or all of -n, -H, -k")
    else:
        n, h, k = args.n, args.h, args.k
    print(f"n={n} h={h} k={k} bound={format_fmp_bound(n, h, k)}")
    return EXIT_OK


COMMANDS: Dict[str, Callable] = {
    "check": cmd_check,
    "classify": cmd_classify,
    "eval": cmd_eval,
    "sat": cmd_sat,
    "model": cmd_model,
    "bisim": cmd_bisim,
    "graphs": cmd_graphs,
    "normalize": cmd_normalize,
    "interpolate": cmd_interpolate,
    "skolem-check": cmd_skolem_check,
    "entangle": cmd_entangle,
    "fmp-bound": cmd_fmp_bound,
}


def build_parser() -> argparse.ArgumentParser:
    """构造命令行解析器"""
    common = _ArgumentParser(add_help=False)
    common.add_argument("-v", "--verbose", action="store_true", help="输出调试日志")
    common.add_argument("--arg-order", help="位置语法糖的论元顺序，逗号分隔")

    parser = _ArgumentParser(
        prog="binding-forms",
        description="绑定片段一阶逻辑工具集",
        epilog="绑定 (a,x) 与 ~ 同级，只作用于紧跟的一元公式：(a,x) q & r 即 ((a,x) q) & r",
    )
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_ArgumentParser)

    check = sub.add_parser("check", parents=[common], help="校验输入文件")
    check.add_argument("--sig")
    check.add_argument("--str")
    check.add_argument("--formula")
    check.add_argument("--table")

    classify = sub.add_parser("classify", parents=[common], help="输出最小片段")
    classify.add_argument("--sig", required=True)
    classify.add_argument("--formula", required=True)

    evaluate_cmd = sub.add_parser("eval", parents=[common], help="在结构上求值")
    evaluate_cmd.add_argument("--sig", required=True)
    evaluate_cmd.add_argument("--str", required=True)
    evaluate_cmd.add_argument("--formula", required=True)
    evaluate_cmd.add_argument("--assign", help='赋值，例如 "x=d0,b=d1"')

    sat = sub.add_parser("sat", parents=[common], help="判定 OB 句子的可满足性")
    sat.add_argument("--sig", required=True)
    sat.add_argument("--formula", required=True)
    sat.add_argument("--certificate", help="证书 JSON 的输出路径")
    sat.add_argument("--jobs", type=int, default=1)
    sat.add_argument("--minimal", action="store_true", help="只检查极小见证集")

    model = sub.add_parser("model", parents=[common], help="有界模型搜索")
    model.add_argument("--sig", required=True)
    model.add_argument("--formula", required=True)
    model.add_argument("--max-order", type=int, required=True)
    model.add_argument("--strategy", choices=["ground", "enumerate"])

    bisim = sub.add_parser("bisim", parents=[common], help="单绑定互模拟")
    bisim.add_argument("--sig", required=True)
    bisim.add_argument("--str1", required=True)
    bisim.add_argument("--str2", required=True)
    bisim.add_argument("--depth", type=int, default=2)

    graphs = sub.add_parser("graphs", parents=[common], help="导出 DOT 图")
    graphs.add_argument("--sig", required=True)
    graphs.add_argument("--formula", required=True)
    graphs.add_argument("--out", required=True)

    normalize = sub.add_parser("normalize", parents=[common], help="输出绑定范式")
    normalize.add_argument("--sig", required=True)
    normalize.add_argument("--formula", required=True)

    interpolate = sub.add_parser("interpolate", parents=[common], help="基本插值")
    interpolate.add_argument("--sig", required=True)
    interpolate.add_argument("--left", required=True)
    interpolate.add_argument("--right", required=True)

    skolem_check = sub.add_parser("skolem-check", parents=[common], help="校验 Skolem 表")
    skolem_check.add_argument("--table", required=True)

    entangle = sub.add_parser("entangle", parents=[common], help="随机耦合映射的纠缠抽样")
    entangle.add_argument("--sig", required=True)
    entangle.add_argument("--formula", required=True)
    entangle.add_argument("--samples", type=int, default=100)
    entangle.add_argument("--seed", type=int)
    entangle.add_argument("--carrier", type=int, default=2, help="载体大小")

    fmp = sub.add_parser("fmp-bound", parents=[common], help="有限模型界")
    fmp.add_argument("--sig")
    fmp.add_argument("--formula")
    fmp.add_argument("-n", type=int)
    fmp.add_argument("-H", dest="h", type=int)
    fmp.add_argument("-k", type=int)
    return parser


def run(argv: Sequence[str]) -> int:
    """
    执行一条命令

    Args:
        argv: 不含程序名的参数列表

    Returns:
        退出码：0 成功，1 输入错误，2 语义错误，10/20 判定结果
    """
    try:
        args = build_parser().parse_args(list(argv))
        if args.verbose:
            setup_logging("DEBUG")
        return COMMANDS[args.command](args)
    except BindingFormsError as e:
        print(f"error: {e}", file=sys.stderr)
        return e.exit_code
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
