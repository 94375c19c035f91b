"""
Binary linear block codes and Toeplitz universal hashing.
"""
