"""Test package for greensfn"""
