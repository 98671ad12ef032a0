"""
Services Package Initialization

This package contains the simulation services: burst layout, interference
models, the two-user scenario harness and the experiment recipes.

Author: Adryan R A
"""
