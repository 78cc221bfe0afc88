"""
Core configuration, settings and error types for graphcert
"""
