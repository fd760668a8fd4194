from typing import Optional


class BindingFormsError(ValueError):
    """所有领域错误的基类"""

    exit_code = 2


class InputError(BindingFormsError):
    """输入错误：语法错误、文件格式错误（CLI 退出码 1）"""

    exit_code = 1

    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None):
        """
        初始化输入错误

        Args:
            message: 错误描述
            line: 出错的行号（从1开始）
            column: 出错的列号（从1开始）
        """
        self.line = line
        self.column = column
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)


class FormulaSyntaxError(InputError):
    """公式文本的词法或语法错误"""


class FileFormatError(InputError):
    """签名、结构或 Skolem 表文件格式错误"""


class SemanticError(BindingFormsError):
    """语义校验错误（CLI 退出码 2）"""


class ResolutionError(SemanticError):
    """符号无法在签名中解析：unknown relation / unknown argument"""


class SignatureError(SemanticError):
    """签名不满足不变量"""


class StructureError(SemanticError):
    """结构不满足不变量"""


class AssignmentError(SemanticError):
    """赋值操作的前置条件不满足"""


class EvaluationError(SemanticError):
    """求值错误：unbound placeholder / variable unassigned at binding / not a sentence"""


class NormalFormError(SemanticError):
    """范式转换错误"""


class SkolemError(SemanticError):
    """Skolem 映射错误：table not total / carrier mismatch"""


class CouplingError(SemanticError):
    """耦合映射或公式函数错误：domain mismatch / argument-set mismatch"""


class FragmentError(SemanticError):
    """片段不符合要求：fragment not OB"""


class InterpolationError(SemanticError):
    """插值前置条件不满足：not an implication"""


class BisimulationError(SemanticError):
    """互模拟错误：signature mismatch"""


class ResourceLimitError(SemanticError):
    """枚举规模超过配置上限"""

    def __init__(self, what: str, count: int, cap: int):
        self.what = what
        self.count = count
        self.cap = cap
        super().__init__(f"resource guard: {what} needs {count} items, cap is {cap}")
