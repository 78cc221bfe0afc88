#!/usr/bin/env python3
"""
Entry point script to run the graphcert CLI
"""
from graphcert.main import start

if __name__ == "__main__":
    start()
