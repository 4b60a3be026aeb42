"""Rational linear forms in Catalan's constant."""
