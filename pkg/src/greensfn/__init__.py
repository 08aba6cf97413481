"""
greensfn - Green's functions and Hammerstein fixed points for second-order two-point BVPs
"""

__version__ = "0.1.0"
__author__ = "greensfn developers"
