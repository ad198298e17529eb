"""Clifford-Jacobi polynomials, spheroidal wavelets and supporting numerics."""
