import sys

from paritypeel.cli import main

sys.exit(main())
