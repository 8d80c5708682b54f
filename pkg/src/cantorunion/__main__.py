import sys

from cantorunion.cli import main

sys.exit(main())
