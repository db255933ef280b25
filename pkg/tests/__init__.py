"""Digit Goldbach Toolkit Test Suite."""
