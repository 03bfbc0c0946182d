"""onp - exact arithmetic in On_p below the first transcendental."""
import logging
import sys

from onp.config.settings import settings

# Configure logging
logging.basicConfig(
    level=settings.log_level.upper(),
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s'
)
logger = logging.getLogger(__name__)


if __name__ == "__main__":
    from onp.cli.commands import main

    sys.exit(main())
