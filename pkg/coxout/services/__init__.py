"""
Services for coxout
"""
