"""
QKD net-key audit application package.
"""