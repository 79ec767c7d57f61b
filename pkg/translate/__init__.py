"""
Перевод конечнозначной логики в классическую.
"""
