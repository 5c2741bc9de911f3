# src/homfin/core/app_factory.py

import logging
from typing import Any, Dict

from homfin.core.config_manager import ConfigManager
from homfin.core.logger import setup_logging
from homfin.services.job_runner import JobRunner
from homfin.services.verification_service import VerificationService
from homfin.utils.parallel import set_default_workers


def create_app_context() -> Dict[str, Any]:
    """
    Initializes and returns the application components in a dictionary.

    Returns:
        A dictionary with the config manager, the logger, the job runner and
        the verification service.
    """
    context = {}
    try:
        # --- 1. Configuration ---
        config = ConfigManager()
        context['config'] = config

        # --- 2. Logging ---
        logger = setup_logging(
            log_level_console=config.get_logging_setting("log_level_console"),
            log_level_file=config.get_logging_setting("log_level_file"),
        )
        context['logger'] = logger

        # --- 3. Engine ---
        set_default_workers(config.get_engine_setting("workers"))
        context['runner'] = JobRunner(config)
        context['verifier'] = VerificationService(config)

        return context
    except Exception as e:
        logging.getLogger(__name__).critical(f"A critical error occurred during application initialization: {e}", exc_info=True)
        exit(1)
