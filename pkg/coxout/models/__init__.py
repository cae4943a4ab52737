"""
Data models for coxout
"""
