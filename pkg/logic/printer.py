from logic.formula import And, Bind, Exists, Forall, Formula, Not, Or, Rel, quantifier_of


def print_formula(phi: Formula, root: bool = True) -> str:
    """
    输出全括号的规范文本，重新解析得到相同的 AST

    除根节点外，量词整体加括号；其余非原子节点总是自带括号。

    Args:
        phi: 公式
        root: 是否为根节点

    Returns:
        规范文本，例如 `exists x. ((a, x) r)`
    """
    if isinstance(phi, Rel):
        return phi.name
    if isinstance(phi, Not):
        return f"(~{print_formula(phi.child, False)})"
    if isinstance(phi, And):
        return f"({print_formula(phi.left, False)} & {print_formula(phi.right, False)})"
    if isinstance(phi, Or):
        return f"({print_formula(phi.left, False)} | {print_formula(phi.right, False)})"
    if isinstance(phi, Bind):
        return f"(({phi.argument}, {phi.variable}) {print_formula(phi.child, False)})"
    if isinstance(phi, (Exists, Forall)):
        text = f"{quantifier_of(phi)} {phi.variable}. {print_formula(phi.child, False)}"
        return text if root else f"({text})"
    raise TypeError(f"not a formula: {phi!r}")
