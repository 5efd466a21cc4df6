import sys

from intfact.cli import main

sys.exit(main())
