"""Entry point: ``python main.py <command> [options]``."""

from cli_management.commands import cli

if __name__ == "__main__":
    cli()
