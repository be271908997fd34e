import json
import logging
import os
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Optional

from pydantic import BaseModel, Field

from domain.constants import LEDGER_ENV_VAR, LEDGER_FILE_NAME, SCHEMA_VERSION

logger = logging.getLogger(__name__)


class LedgerRecord(BaseModel):
    schema_version: int = SCHEMA_VERSION
    timestamp: str = Field(default_factory=lambda: datetime.now(timezone.utc).isoformat())
    command: str
    verified: bool
    payload: dict[str, Any]


class Ledger:
    """Append-only JSON-lines log; each run adds records and never rewrites old ones."""

    def __init__(self, path: Optional[str] = None):
        self.path = Path(path or os.environ.get(LEDGER_ENV_VAR) or LEDGER_FILE_NAME)

    def append(self, record: LedgerRecord) -> None:
        self.path.parent.mkdir(parents=True, exist_ok=True)
        with self.path.open("a", encoding="utf-8") as handle:
            handle.write(json.dumps(record.model_dump(mode="json"), sort_keys=True) + "\n")
        logger.debug("ledger %s: appended %s record", self.path, record.command)

    def read(self) -> list[LedgerRecord]:
        if not self.path.exists():
            return []
        with self.path.open(encoding="utf-8") as handle:
            return [LedgerRecord.model_validate_json(line) for line in handle if line.strip()]
