"""
Classical breach construction: an ECC-aligned observation that reveals the corrected key.
"""
