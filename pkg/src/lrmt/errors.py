"""Exception hierarchy shared across the toolkit.

The CLI maps these onto exit codes: validation failures exit 2,
provider and I/O failures exit 3.
"""


class LrmtError(Exception):
    """Base class for all toolkit errors."""


class IngestError(LrmtError):
    """A file could not be ingested (unreadable, wrong format, too many bad rows)."""


class ValidationError(LrmtError):
    """A domain invariant or precondition was violated."""


class ProviderError(LrmtError):
    """A remote provider (translation or embedding) failed after retries."""


class CheckpointError(LrmtError):
    """A checkpoint file is corrupt or inconsistent with the current job."""
