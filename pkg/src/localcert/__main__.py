import sys

from localcert.cli import main

sys.exit(main())
