import sys

from fanosod.cli import main

sys.exit(main())
