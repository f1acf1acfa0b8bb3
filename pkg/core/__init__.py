# core/__init__.py
"""Модель двух вторичных сетей под общим ITL: сценарии, аналитика, Монте-Карло, оптимизация"""
