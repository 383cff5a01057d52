"""
Typed settings for the matrix prover.
"""
