import sys

from colortoric.cli.main import main

sys.exit(main())
