import sys

from natdd.cli import main

sys.exit(main())
