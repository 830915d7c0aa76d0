import sys

from toruspdo.cli.main import main

sys.exit(main())
