"""
Абстрактный синтаксис, текстовый язык и печать.
"""
