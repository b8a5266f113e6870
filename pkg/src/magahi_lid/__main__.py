import sys

from magahi_lid.cli import main

sys.exit(main())
