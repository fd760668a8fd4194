# 语法模块初始化文件