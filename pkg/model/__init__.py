# 核心模型模块初始化文件