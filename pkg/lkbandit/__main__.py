import sys

from lkbandit.cli.main import main

sys.exit(main())
