from .config import RunConfig, parse_config_text, load_config
from .main import main, build_parser, COMMANDS, EXIT_OK, EXIT_FAILURE, EXIT_USAGE
