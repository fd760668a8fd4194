# 求解器模块初始化文件