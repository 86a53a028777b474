"""
Ensembles package: seeded random bodies, parameter sweeps and extremal search.
"""
