"""
Test Suite Initialization

This package contains test cases for the waveform coexistence simulator.

Author: Adryan R A
"""
