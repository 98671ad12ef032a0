"""
Waveform Coexistence Simulator Package

Link-level simulation of the mutual interference between an incumbent CP-OFDM
user and an asynchronous adjacent-band secondary user (CP-OFDM or
OFDM/OQAM with the PHYDYAS prototype filter).

Author: Adryan R A
Version: 1.0.0
"""

__version__ = "1.0.0"
__author__ = "Adryan R A"
__email__ = ""
__description__ = "CP-OFDM / OFDM-OQAM coexistence interference simulator"
