"""What the management commands share: exit codes, one-line diagnostics, and loading scenario files."""
import os

from django.core.management.base import CommandError

from guidepath.exceptions import ScenarioError

from .scenario import parse_scenario


EXIT_FAILURE = 1
EXIT_VALIDATION = 2
EXIT_SAFETY = 3
EXIT_PARSE = 4


def failure(kind, detail, returncode=EXIT_FAILURE):
    """A CommandError that prints as the single line `<kind>: <detail>`."""
    return CommandError("%s: %s" % (kind, " ".join(str(detail).split())), returncode=returncode)


def load_scenario(path):
    try:
        with open(path, "r") as f:
            text = f.read()
    except OSError as e:
        raise failure("parse error", "%s: %s" % (path, e.strerror), EXIT_PARSE) from e

    try:
        return parse_scenario(text, name=os.path.splitext(os.path.basename(path))[0])
    except ScenarioError as e:
        raise failure("parse error", "%s: %s" % (path, e), EXIT_PARSE) from e


def format_angles(angles):
    return " ".join("%.6f" % a for a in angles)
