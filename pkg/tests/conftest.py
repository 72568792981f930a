import sys
from pathlib import Path

# make the sibling oracle module importable regardless of invocation directory
sys.path.insert(0, str(Path(__file__).parent))
