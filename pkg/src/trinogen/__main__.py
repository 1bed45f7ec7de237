import sys

from trinogen.cli import main

sys.exit(main())
