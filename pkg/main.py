import sys

from nilgeo.cli import main

if __name__ == "__main__":
    sys.exit(main())
