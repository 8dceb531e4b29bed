from datetime import datetime
from typing import Optional

import pytz
from dateutil import parser

from harmonic_ctc.common.exceptions import BadInputException


def report_timestamp(value: Optional[str] = None, now: Optional[datetime] = None) -> str:
    """ISO-8601 UTC stamp for a report, to the second.

    An explicit ``value`` is parsed with dateutil (naive values are taken as
    UTC) so that stamped reports stay reproducible; otherwise ``now`` or the
    current time is used.
    """
    if value:
        try:
            dt = parser.parse(value)
        except (ValueError, OverflowError) as e:
            raise BadInputException(f"Cannot parse timestamp {value!r}: {e}") from e
    else:
        dt = now if now is not None else datetime.now(pytz.utc)
    if dt.tzinfo is None:
        dt = pytz.utc.localize(dt)
    dt = dt.astimezone(pytz.utc).replace(microsecond=0)
    return dt.isoformat(timespec='seconds')
