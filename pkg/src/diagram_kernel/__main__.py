import sys

from diagram_kernel.cli import main

if __name__ == "__main__":
    sys.exit(main())
