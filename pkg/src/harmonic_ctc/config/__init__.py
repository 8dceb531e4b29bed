from harmonic_ctc.config.settings import (
    Settings,
    get_settings,
    locate_config,
    DEFAULTS,
)
from harmonic_ctc.config.verbosity import Verbosity
