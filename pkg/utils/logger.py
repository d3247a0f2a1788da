"""
╔══════════════════════════════════════════╗
║       ROTDIFF — Utilities: Logger        ║
╚══════════════════════════════════════════╝

Structured logging with console + file output.
"""

import logging
import logging.handlers
import os


def setup_logger(config, base_dir):
    """Set up the rotdiff logger with console and rotating file handlers."""
    log_cfg = config.get("logging", {})
    log_level = getattr(logging, str(log_cfg.get("level", "INFO")).upper(), logging.INFO)

    logger = logging.getLogger("rotdiff")
    if logger.handlers:
        return logger  # configured once per process
    logger.setLevel(logging.DEBUG)
    logger.propagate = False

    console = logging.StreamHandler()
    console.setLevel(log_level)
    console.setFormatter(logging.Formatter("  %(message)s"))
    logger.addHandler(console)

    log_file = log_cfg.get("log_file")
    if log_file:
        log_file = os.path.join(base_dir, log_file)
        os.makedirs(os.path.dirname(log_file) or ".", exist_ok=True)
        # 5 MB per file, 3 backups
        file_handler = logging.handlers.RotatingFileHandler(
            log_file, maxBytes=5 * 1024 * 1024, backupCount=3, encoding="utf-8"
        )
        file_handler.setLevel(logging.DEBUG)
        file_handler.setFormatter(logging.Formatter("%(asctime)s [%(levelname)s] %(name)s: %(message)s"))
        logger.addHandler(file_handler)

    return logger
