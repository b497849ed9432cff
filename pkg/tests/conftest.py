import os
import sys

# Make sibling helper modules (prop_suites) importable regardless of how
# pytest was invoked.
sys.path.insert(0, os.path.dirname(__file__))
