#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
datawords - decision procedures for data words

Entry point for the command line. Works from a source checkout and from a
PyInstaller bundle.
"""

import os
import sys

# Ensure the project root is importable for both normal and PyInstaller builds
if getattr(sys, 'frozen', False):
    # If running as a bundled exe
    root_dir = sys._MEIPASS
else:
    root_dir = os.path.dirname(os.path.abspath(__file__))
if root_dir not in sys.path:
    sys.path.insert(0, root_dir)

from src.cli.commands import run


def main(argv=None):
    return run(argv)


if __name__ == '__main__':
    sys.exit(main())
