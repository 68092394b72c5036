"""Small helpers shared by the analysis and simulation packages. These
are not intended as API functions, and will not remain stable over time.
"""

# These submodules should not have any import-time dependencies.
from .colorize import colorize
