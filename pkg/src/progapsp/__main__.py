import sys

from progapsp.cli import main

sys.exit(main())
