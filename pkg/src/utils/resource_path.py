"""Locating files shipped with the package, in a source checkout or a PyInstaller bundle."""

import os
import sys


def bundle_root(base_dir=None):
    """Directory that holds ``assets/``; PyInstaller unpacks into ``sys._MEIPASS``."""
    return getattr(sys, "_MEIPASS", None) or base_dir or os.path.abspath(".")


def resource_path(relative_path, base_dir=None):
    return os.path.join(bundle_root(base_dir), relative_path)


def resolve_problem(path, problems_dir):
    """``path`` when it exists, otherwise the bundled problem of that name (``.json`` optional)."""
    if os.path.exists(path):
        return path
    name = os.path.basename(path if path.endswith(".json") else f"{path}.json")
    candidate = os.path.join(problems_dir, name)
    return candidate if os.path.exists(candidate) else path
