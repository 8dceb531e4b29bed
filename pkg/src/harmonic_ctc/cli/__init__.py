from harmonic_ctc.cli.loader import MapDefinition, load_definition, load_map, parse_definition
from harmonic_ctc.cli.report import CheckResult, RunReport, canonical_json, to_csv
from harmonic_ctc.cli.main import build_parser, main, cmd_check, cmd_verify, cmd_distortion, cmd_render
