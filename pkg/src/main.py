"""
Link Engine - Entry Point
"""

import sys
from pathlib import Path

from dotenv import load_dotenv

# Add src to path
sys.path.insert(0, str(Path(__file__).parent))

from app import LinkEngineApp


def main(argv=None) -> int:
    load_dotenv()
    return LinkEngineApp().run(argv)


if __name__ == "__main__":
    sys.exit(main())
