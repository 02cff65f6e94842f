import sys

from syncword.main import main

sys.exit(main())
