"""python -m rkforge"""
import sys

from .cli import main

sys.exit(main())
