"""Main entry point for unitary-branching package."""

from unitary_branching.cli.main import cli

if __name__ == '__main__':
    cli()
