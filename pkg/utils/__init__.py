# Точные рациональные числа
