"""Shared exception types.

Application error codes (used by the JSON-RPC layer) live on the exception
classes so the server can map them without a central registry.
"""


class StorycasterError(Exception):
    """Base class for all errors raised by this package."""

    #: JSON-RPC application error code (>= 1000). Subclasses override.
    rpc_code = 1000


class GeometryError(StorycasterError):
    """Invalid geometric input: bad rig, mismatched frame, empty mesh."""

    rpc_code = 1100


class CalibrationError(StorycasterError):
    """Unparseable or inconsistent calibration file."""

    rpc_code = 1101


class BackendError(StorycasterError):
    """A generation backend failed (after retries, for remote providers)."""

    rpc_code = 1200


class DuplicateSourceError(StorycasterError):
    """An audio source name is already registered."""

    rpc_code = 1001


class UnknownSourceError(StorycasterError):
    """An audio source name is not registered."""

    rpc_code = 1002


class UnknownObjectError(StorycasterError):
    """An object name is missing from the mask registry."""

    rpc_code = 1300

    def __init__(self, name: str, known: list[str]):
        self.name = name
        self.known = sorted(known)
        super().__init__(
            f"unknown object {name!r}; known objects: {', '.join(self.known) or '(none)'}"
        )


class SessionError(StorycasterError):
    """Illegal session operation (advancing an ended session, unknown id)."""

    rpc_code = 1400


class MaskError(StorycasterError):
    """Unreadable mask file or mask/panorama dimension mismatch."""

    rpc_code = 1301
