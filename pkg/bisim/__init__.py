# 互模拟模块初始化文件