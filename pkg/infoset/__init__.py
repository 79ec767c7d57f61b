"""
Информационные множества и фильтр хорошести.
"""
