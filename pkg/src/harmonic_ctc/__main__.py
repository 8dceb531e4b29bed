import sys

from harmonic_ctc.cli.main import main

sys.exit(main())
