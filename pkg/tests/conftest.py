import sys
from pathlib import Path

# Allow `import oracles` / `import strategies` from any test module.
sys.path.insert(0, str(Path(__file__).parent))
