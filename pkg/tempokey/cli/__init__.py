from tempokey.cli.config import RunConfig
from tempokey.cli.main import main
