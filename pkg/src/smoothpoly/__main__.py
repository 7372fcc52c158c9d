from smoothpoly.cli import main
import sys

sys.exit(main())
