import sys

from syk_nmr_sim.cli import main

sys.exit(main())
