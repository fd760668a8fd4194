import os
from functools import lru_cache

from pydantic import BaseModel, Field


class Settings(BaseModel):
    """运行配置，所有字段都可以通过环境变量或 .env 文件覆盖"""

    skolem_map_cap: int = Field(..., description="Skolem 映射枚举数量上限")
    model_search_cap: int = Field(..., description="有界模型搜索的解释数量/命题原子数量上限")
    sentence_enumeration_cap: int = Field(..., description="区分句子搜索的枚举数量上限")
    fmp_exponent_cap: int = Field(..., description="有限模型界 (n·k)! 指数的渲染上限")
    truth_table_limit: int = Field(..., description="bool_sat 使用真值表的最大符号数")
    sat_solver: str = Field(..., description="pysat 求解器名称")
    model_finder: str = Field(..., description="默认模型搜索策略：ground 或 enumerate")
    default_seed: int = Field(..., description="随机命令的默认种子")
    log_level: str = Field(..., description="日志级别")

    @classmethod
    def from_env(cls) -> "Settings":
        """
        从环境变量读取配置

        Returns:
            配置实例
        """
        return cls(
            skolem_map_cap=int(os.getenv("SKOLEM_MAP_CAP", "1000000")),
            model_search_cap=int(os.getenv("MODEL_SEARCH_CAP", "1000000")),
            sentence_enumeration_cap=int(os.getenv("SENTENCE_ENUMERATION_CAP", "200000")),
            fmp_exponent_cap=int(os.getenv("FMP_EXPONENT_CAP", "4096")),
            truth_table_limit=int(os.getenv("TRUTH_TABLE_LIMIT", "20")),
            sat_solver=os.getenv("SAT_SOLVER", "m22"),
            model_finder=os.getenv("MODEL_FINDER", "ground"),
            default_seed=int(os.getenv("DEFAULT_SEED", "0")),
            log_level=os.getenv("LOG_LEVEL", "WARNING"),
        )


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    """返回进程内共享的配置实例"""
    return Settings.from_env()
