# src/tests/conftest.py
"""Put ``src/`` on the import path so the suite runs from a plain checkout."""
import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), ".."))
