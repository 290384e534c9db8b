"""Allow ``python -m xychain`` to reach the command-line interface."""

from .cli import main

raise SystemExit(main())
