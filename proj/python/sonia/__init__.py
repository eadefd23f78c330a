"""Python bindings for the sonia engine.

The heavy lifting lives in the C++ extension ``sonia._core``; this package
adds thin JSON decoding on top.
"""
import json as _json

from . import _core
from ._core import EvalError, palette, sus_score, t_test, t_test_sample

__all__ = [
    "EvalError",
    "Session",
    "compile_scene",
    "palette",
    "simulate",
    "sus_score",
    "t_test",
    "t_test_sample",
    "validate",
]


def validate(pack_dir):
    """Validate a pack directory; returns a list of diagnostic dicts."""
    return _core.validate(str(pack_dir))


def compile_scene(pack_dir):
    """Compile a pack directory and return the scene bundle as a dict."""
    return _json.loads(_core.compile_scene(str(pack_dir)))


def simulate(pack_dir, script_file):
    """Replay a script; returns (transcript dict, error reply count)."""
    text, errors = _core.simulate(str(pack_dir), str(script_file))
    return _json.loads(text), errors


class Session:
    """A live learning session speaking the JSON message protocol."""

    def __init__(self, pack_dir):
        self._session = _core.Session(str(pack_dir))

    def send(self, message):
        if not isinstance(message, str):
            message = _json.dumps(message)
        return _json.loads(self._session.handle(message))

    def state(self):
        return _json.loads(self._session.state())

    def progress(self):
        return _json.loads(self._session.progress())

    def restore(self, snapshot):
        self._session.restore(_json.dumps(snapshot))
