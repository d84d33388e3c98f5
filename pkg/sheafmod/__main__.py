"""Entry point for python -m sheafmod."""

from sheafmod.cli import app

if __name__ == "__main__":
    app()
