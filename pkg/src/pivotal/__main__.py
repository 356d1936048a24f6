import sys

from pivotal.cli.tool import main

sys.exit(main())
