"""Line-delimited JSON event reports."""

import json
import logging
from pathlib import Path
from typing import Iterable, List, Union

from src.errors import InputFormatError
from src.extraction.template import HazardEvent

logger = logging.getLogger(__name__)


def events_to_report(events: Iterable[HazardEvent]) -> str:
    """One JSON object per event, in input order; empty string for no events."""
    return "".join(json.dumps(event.to_dict(), ensure_ascii=False) + "\n" for event in events)


def read_report(text: str, source: str = "<report>") -> List[HazardEvent]:
    """Parse a report produced by events_to_report; blank lines are skipped."""
    events = []
    for line_number, line in enumerate(text.splitlines(), 1):
        if not line.strip():
            continue
        try:
            record = json.loads(line)
        except json.JSONDecodeError as e:
            raise InputFormatError(f"invalid JSON ({e.msg})", source, line_number)
        if not isinstance(record, dict):
            raise InputFormatError("event record is not an object", source, line_number)
        events.append(HazardEvent.from_dict(record))
    return events


def write_report(events: Iterable[HazardEvent], path: Union[str, Path]) -> int:
    """Write the report file; returns the number of events written."""
    events = list(events)
    Path(path).write_text(events_to_report(events), encoding="utf-8")
    logger.info(f"✅ Wrote {len(events)} events to {path}")
    return len(events)
