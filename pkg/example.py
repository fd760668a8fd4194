from pathlib import Path

from dotenv import load_dotenv

# 加载环境变量
load_dotenv()

# 导入必要的模块
from bisim.bisimulation import are_bisimilar
from bisim.distinguish import find_distinguishing_sentence
from logic.fragments import classify_fragment
from logic.normal_form import print_normal_form, rename_apart, to_binding_normal_form
from logic.parser import read_formula_file
from logic.printer import print_formula
from model.assignment import parse_assignment_literal
from model.files import format_structure, read_signature_file, read_structure_file
from overlap.graphs import DependenceGraph, extract_schema, is_acyclic, is_conflicting
from semantics.evaluator import evaluate
from solver.bounds import fmp_parameters, format_fmp_bound
from solver.decide import decide_sat
from solver.model_finder import find_model_bounded
from utils.logger import setup_logging

# 示例文件目录
CORPUS = Path(__file__).resolve().parent / "corpus"


def evaluation_example():
    """求值示例：运行示例的三个公式"""
    signature = read_signature_file(CORPUS / "running.sig")
    structure = read_structure_file(CORPUS / "running.str", signature)
    print(f"结构的论域: {', '.join(structure.domain)}")

    cases = [
        ("running_phi1.fol", ""),
        ("running_phi2.fol", "x=0,b=1"),
        ("running_phi3.fol", "x=0"),
    ]
    for name, assign in cases:
        phi = read_formula_file(CORPUS / name, signature)
        value = evaluate(structure, parse_assignment_literal(assign), phi)
        print(f"{print_formula(phi)}  [{assign or '空赋值'}] => {value}")


def decision_example():
    """判定示例：四个三元模式集合"""
    signature = read_signature_file(CORPUS / "triple.sig")
    for index in range(1, 5):
        nf = to_binding_normal_form(read_formula_file(CORPUS / f"triple_phi{index}.fol", signature))
        print(f"\n公式 {index} ({classify_fragment(nf).value}):")
        print(print_normal_form(nf))

        # 重叠、冲突与依赖环
        schemas = [extract_schema(leaf) for leaf in rename_apart(nf).leaves()]
        dependence = DependenceGraph(schemas, set(signature.arguments))
        print(f"冲突: {is_conflicting(dependence.collapsing)}, 依赖图无环: {is_acyclic(dependence)}")

        verdict = decide_sat(nf)
        print(f"判定结果: {verdict.value}")
        if verdict.is_sat:
            structure = find_model_bounded(nf, 2, signature)
            if structure is not None:
                print(f"找到 {structure.order} 阶模型:")
                print(format_structure(structure), end="")

        n, h, k = fmp_parameters(nf)
        print(f"有限模型界: {format_fmp_bound(n, h, k)}")


def bisimulation_example():
    """互模拟示例"""
    signature = read_signature_file(CORPUS / "binary.sig")
    r1, r2, r3, r4 = (read_structure_file(CORPUS / f"r{i}.str", signature) for i in range(1, 5))

    print(f"\nR1 与 R2 互模拟: {are_bisimilar(r1, r2)}")
    print(f"R3 与 R4 互模拟: {are_bisimilar(r3, r4)}")
    sentence = find_distinguishing_sentence(r3, r4, 2)
    if sentence is not None:
        print(f"区分句子: {print_formula(sentence)}")


def main():
    """主函数"""
    setup_logging()
    evaluation_example()
    decision_example()
    bisimulation_example()


if __name__ == "__main__":
    main()
