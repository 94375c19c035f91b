"""
Closed-form entropy, leak and key-rate accounting.
"""
