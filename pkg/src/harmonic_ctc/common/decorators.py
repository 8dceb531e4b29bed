"""Decorators shared by the command-line entry points."""

import functools
import json
import logging
import sys
import traceback
from typing import Callable

from harmonic_ctc.common.exceptions import BadInputException, HarmonicCtcError

logger = logging.getLogger(__name__)

EXIT_ERROR = 3


def exit_code_on_failure(func: Callable[..., int]) -> Callable[..., int]:
    """Turn any exception escaping a command into exit code 3.

    Input and IO errors get a one-line message on stderr; anything else is
    logged with its traceback first.

    Example:
        ```python
        @exit_code_on_failure
        def cmd_check(args):
            ...
            return verdict.exit_code()
        ```
    """
    @functools.wraps(func)
    def wrapped(*args, **kw) -> int:
        try:
            return func(*args, **kw)
        except (json.JSONDecodeError, BadInputException, OSError) as e:
            print(f"error: {e}", file=sys.stderr)
            return EXIT_ERROR
        except HarmonicCtcError as e:
            print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
            return EXIT_ERROR
        except Exception as e:
            logger.error(traceback.format_exc())
            print(f"internal error: {e}", file=sys.stderr)
            return EXIT_ERROR
    return wrapped
