"""
Models package for inequalities app.

Saved verification runs are the only thing the lab keeps in the database.
"""

from .runs import SlackRecord, VerificationRun

__all__ = [
    'VerificationRun',
    'SlackRecord',
]
