# 重叠判定模块初始化文件