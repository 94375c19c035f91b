"""
Variational distance and guessing probability over classical ensembles.
"""
