# 命令行模块初始化文件