"""
Эксперименты с законом 0-1 для конечнозначных MD-логик.
"""
