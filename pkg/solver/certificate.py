from typing import List, Optional

from pydantic import BaseModel, Field


class ConflictRecord(BaseModel):
    """一个见证集的不一致记录"""

    args: List[str] = Field(..., description="公共论元集合 A")
    schemas: List[str] = Field(..., description="重叠的模式子集 S")
    conjunction: str = Field(..., description="不可满足的派生关系合取")


class WitnessRecord(BaseModel):
    """见证集及其检查结果"""

    leaves: List[str] = Field(..., description="见证集中的叶子")
    conflict: Optional[ConflictRecord] = Field(None, description="不一致记录，通过的见证集为空")


class Certificate(BaseModel):
    """可复查的判定证书"""

    verdict: str = Field(..., description="sat 或 unsat")
    witnesses: List[WitnessRecord] = Field(default_factory=list, description="UNSAT 时为全部见证集，SAT 时为通过的见证集")

    def to_json(self) -> str:
        return self.model_dump_json(indent=2, exclude_none=True)
