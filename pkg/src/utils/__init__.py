"""
Utils Package Initialization

This package contains logging setup, link metrics and result reporting.

Author: Adryan R A
"""
