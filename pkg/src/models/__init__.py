"""
Models Package Initialization

Typed configuration and report models of the simulator.

Author: Adryan R A
"""
