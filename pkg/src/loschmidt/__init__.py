"""Echo dynamics of perturbed quantum maps.

Subpackages are imported lazily so the command-line entry point can configure
threading before numpy-heavy modules load.
"""

__version__ = "0.1.0"

_SUBMODULES = (
    "core",
    "spin",
    "kicked_top",
    "jaynes_cummings",
    "echo",
    "theory",
    "io",
    "cli",
)


def __getattr__(name):
    if name in _SUBMODULES:
        import importlib

        module = importlib.import_module(f".{name}", __name__)
        globals()[name] = module
        return module
    raise AttributeError(f"module {__name__!r} has no attribute {name!r}")


def __dir__():
    return sorted(list(globals()) + list(_SUBMODULES))
