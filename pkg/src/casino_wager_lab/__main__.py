"""Entry point for python -m casino_wager_lab."""

from casino_wager_lab.cli import main

if __name__ == "__main__":
    main()
