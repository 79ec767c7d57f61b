"""
Модели, вычисление значений и выполнимость.
"""
