import datetime
import logging
import os
import sys

from pythonjsonlogger import jsonlogger

TEXT_FORMAT = "%(asctime)s | %(levelname)-7s | %(name)s | %(message)s"


class CustomJsonFormatter(jsonlogger.JsonFormatter):
    def add_fields(self, log_record, record, message_dict):
        super().add_fields(log_record, record, message_dict)
        if not log_record.get("timestamp"):
            now = datetime.datetime.now(datetime.timezone.utc)
            log_record["timestamp"] = now.strftime("%Y-%m-%dT%H:%M:%S.%fZ")
        if log_record.get("level"):
            log_record["level"] = log_record["level"].upper()
        else:
            log_record["level"] = record.levelname


def setup_logging(level=logging.INFO, log_file="logs/symspace.json"):
    """JSON-логи в `log_file` и stderr. Stdout остаётся под отчёты."""
    directory = os.path.dirname(log_file)
    if directory:
        os.makedirs(directory, exist_ok=True)

    formatter = CustomJsonFormatter("%(timestamp)s %(level)s %(name)s %(message)s")

    handler = logging.FileHandler(log_file, encoding="utf-8")
    handler.setFormatter(formatter)

    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setFormatter(formatter)

    logging.basicConfig(level=level, handlers=[handler, console_handler], force=True)


def setup_text_logging(level=logging.INFO):
    logging.basicConfig(
        level=level,
        format=TEXT_FORMAT,
        datefmt="%Y-%m-%d %H:%M:%S",
        handlers=[logging.StreamHandler(sys.stderr)],
        force=True,
    )


def configure_from_settings():
    from config.settings import log_config

    level = getattr(logging, log_config.LOG_LEVEL, logging.INFO)
    if log_config.LOG_FORMAT == "JSON":
        setup_logging(level=level, log_file=log_config.LOG_FILE)
    else:
        setup_text_logging(level=level)
