import logging
import math
from typing import Optional, Tuple

from logic.normal_form import NormalFormSentence, alpha_key
from overlap.graphs import extract_schema
from utils.config import get_settings
from utils.errors import SemanticError

logger = logging.getLogger(__name__)


def _check_counts(n: int, h: int, k: int) -> None:
    for name, value in (("n", n), ("h", h), ("k", k)):
        if value < 1:
            raise SemanticError(f"bound parameter {name} must be at least 1, got {value}")


def compute_fmp_bound(n: int, h: int, k: int) -> int:
    """
    有限模型界 n·h·2^((n·k)!)

    Args:
        n: 模式个数
        h: 模式的最大存在变量数
        k: 模式的最大论元数

    Returns:
        精确整数
    """
    _check_counts(n, h, k)
    return n * h * 2 ** math.factorial(n * k)


def format_fmp_bound(n: int, h: int, k: int, cap: Optional[int] = None) -> str:
    """
    渲染有限模型界

    Args:
        n: 模式个数
        h: 模式的最大存在变量数
        k: 模式的最大论元数
        cap: 指数 (n·k)! 的渲染上限，默认读取 FMP_EXPONENT_CAP

    Returns:
        指数在上限内时为十进制整数，否则为符号形式 `n*h*2^(m!)`
    """
    _check_counts(n, h, k)
    cap = get_settings().fmp_exponent_cap if cap is None else cap
    if math.factorial(n * k) > cap:
        logger.info("fmp exponent (%d*%d)! exceeds cap %d, rendering symbolically", n, k, cap)
        return f"{n * h}*2^({n * k}!)"
    return str(compute_fmp_bound(n, h, k))


def fmp_parameters(nf: NormalFormSentence) -> Tuple[int, int, int]:
    """
    OB 句子的界参数 (n, h, k)

    Args:
        nf: 单绑定范式句子

    Returns:
        (不同模式的个数, 最大存在变量数（至少为 1）, 最大论元数)
    """
    schemas = {extract_schema(alpha_key(leaf)) for leaf in nf.leaves()}
    n = len(schemas)
    h = max([len(s.prefix.existentials) for s in schemas] + [1])
    k = max(len(s.arguments) for s in schemas)
    return n, h, k
