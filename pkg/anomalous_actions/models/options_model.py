from pydantic import BaseModel, ConfigDict, Field


class VerificationOptions(BaseModel):
    """Knobs shared by every verifier run."""

    model_config = ConfigDict(extra="forbid")

    workers: int = Field(default=1, ge=1)
    witness_cap: int = Field(default=10, ge=0)
    guardrail: int = Field(default=20000, ge=1)

    def overridden(self, **changes: object) -> "VerificationOptions":
        """Copy with the non-None keyword values applied."""
        updates = {key: value for key, value in changes.items() if value is not None}
        return self.model_validate({**self.model_dump(), **updates})
