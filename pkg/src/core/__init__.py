"""
Core Package Initialization

This package contains settings, exceptions and the numerical foundation
(transforms, quadrature, seeded random streams) of the simulator.

Author: Adryan R A
"""
