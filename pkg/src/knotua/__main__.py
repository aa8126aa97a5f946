from knotua.cli import main
import sys
sys.exit(main())
