# Skolem 映射与耦合模块初始化文件