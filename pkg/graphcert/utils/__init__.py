"""
Algebra, graph, certificate and numeric utilities for graphcert
"""
