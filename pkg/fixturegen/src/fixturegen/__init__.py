"""Offline molecular-fixture generator (RHF + determinant-CI oracle)."""
