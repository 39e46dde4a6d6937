#!/usr/bin/env python3
"""Main entry point for quadcommute."""

from quadcommute.app import main

if __name__ == "__main__":
    main()
