"""Brute-force numerical verifiers.

Nothing in this subpackage imports the closed-form engines: the oracles work
from the physical parameters of a scenario and the equations of motion alone.
"""
