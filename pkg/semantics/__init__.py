# 语义模块初始化文件