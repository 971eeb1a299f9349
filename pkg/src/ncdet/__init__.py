# Package-wide logger shared by the algebra core, the verification harness and the CLI
import os
import sys
import logging

# Timestamp, level, module name and message
logging_str = "[%(asctime)s: %(levelname)s: %(module)s: %(message)s]"

log_dir = os.environ.get("NCDET_LOG_DIR", "logs")
log_filepath = os.path.join(log_dir, "logging.log")

os.makedirs(log_dir, exist_ok=True)

# stdout carries the CLI's structured report, so console logging goes to stderr
logging.basicConfig(
    level=os.environ.get("NCDET_LOG_LEVEL", "INFO").upper(),
    format=logging_str,
    handlers=[
        logging.FileHandler(log_filepath),
        logging.StreamHandler(sys.stderr),
    ],
)

logger = logging.getLogger("ncdetlogger")
