"""Module Errors."""

from __future__ import annotations

from sign_data.types import SignerId, ViewAngle


class PlanError(Exception):
    """Base error of the fold planner."""

    def __init__(self: PlanError, message: str) -> None:
        """PlanError init."""
        self.message = message
        super().__init__(self.message)


class MissingClipError(PlanError):
    """A clip required by the protocol is absent from the manifest."""

    def __init__(self: MissingClipError, gloss_id: int, signer: SignerId, view: ViewAngle) -> None:
        """MissingClipError init."""
        self.gloss_id = gloss_id
        self.signer = signer
        self.view = view
        super().__init__(f"missing clip: gloss {gloss_id}, signer {signer.value}, view {view.value}")


class InvalidViewCountError(PlanError, ValueError):
    """The number of training views is not 1, 2 or 3."""

    def __init__(self: InvalidViewCountError, count: int) -> None:
        """InvalidViewCountError init."""
        super().__init__(f"training views must number 1, 2 or 3, got {count}")
