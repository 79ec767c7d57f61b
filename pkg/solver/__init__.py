"""
Точный решатель кусочно-линейных ограничений хорошести.
"""
