import os
import sys

# Allow running pytest from a plain checkout without installing the package.
sys.path.insert(0, os.path.join(os.path.dirname(__file__), "src"))
