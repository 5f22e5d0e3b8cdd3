"""Numerical core: cross-sections, pencils, waves and scattering."""
