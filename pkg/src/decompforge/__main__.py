"""
Entrypoint for running decomp-forge as a module.
"""

from .cli import app

if __name__ == "__main__":
    app()
