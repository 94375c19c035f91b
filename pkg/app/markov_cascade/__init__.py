"""
Failure-probability accounting with one or two Markov-inequality layers.
"""
