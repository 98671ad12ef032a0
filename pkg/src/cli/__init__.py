"""
CLI Package Initialization

Sub-command implementations and the self-test used by main.py.

Author: Adryan R A
"""
