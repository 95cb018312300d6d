"""
Entry point for running GCWSNet as a module.

Enables: python -m gcwsnet hash ...
"""

from gcwsnet.cli.main import main

if __name__ == "__main__":
    main()
