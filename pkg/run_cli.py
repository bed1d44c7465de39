#!/usr/bin/env python3
"""
CLI Runner
Quick way to invoke the command-line interface from a checkout
"""

import sys

from src.cli.main import main

if __name__ == "__main__":
    sys.exit(main())
