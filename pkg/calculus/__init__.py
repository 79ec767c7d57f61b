"""
Исчисление MD-предложений: правила, проверка выводов, решение следования.
"""
