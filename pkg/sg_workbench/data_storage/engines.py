"""Various ways to save reports."""
import logging
import os
import re
from typing import Any, Mapping, Optional, Tuple

from sg_workbench.codec import dumps_report


class Engine():
    """
    Base class for actual report engines.
    Meant to be instantiated by a Writer.
    Methods are overridden by subclasses if actually used.

    Fields:
    REQUIRED_CONFIG_FIELDS: Settings required to be present in config section for engine to function properly.

    Usage:
    1. connect()
    2. save_report()
    3. disconnect()
    """
    REQUIRED_CONFIG_FIELDS: Tuple[str, ...] = ()

    def __init__(self, config: Mapping) -> None:
        """Sets required configuration settings for saving reports.

        Arguments:
            config {Mapping} -- Appropriate config section returned by configparser.
        """
        pass

    def _check_config_fields(self, config: Mapping) -> None:
        """Checks completeness of required config settings.

        Arguments:
            config {Mapping} -- Appropriate config section returned by configparser.

        Raises:
            KeyError: Whenever required setting is missing from a config section.
        """
        for required_field in self.REQUIRED_CONFIG_FIELDS:
            if required_field not in config:
                raise KeyError(
                    f"Required field is missing from config file section {config}: {required_field}")

    def connect(self) -> None:
        """Actions required to open a report destination."""
        pass

    def save_report(self, report: Mapping[str, Any]) -> Optional[str]:
        """Actions required to store one report; returns where it went, if anywhere."""
        pass

    def disconnect(self) -> None:
        """Actions needed to close a report destination. Used during normal functioning and by exception handlers."""
        pass


class LogOutput(Engine):
    """Outputs report summaries to log. Nothing to set up and close."""

    def save_report(self, report: Mapping[str, Any]) -> Optional[str]:
        logging.info(f"{report['name']}: {report.get('summary', '')}")
        for key, value in sorted(report.get("result", {}).items()):
            if not isinstance(value, (dict, list)):
                logging.info(f"  {key}: {value}")
        return None


class JSONOutput(Engine):
    """
    Writes each report to OUTPUT_DIR/<name>.json.
    Serialization is deterministic: sorted keys, fixed indentation.
    """
    REQUIRED_CONFIG_FIELDS: Tuple[str, ...] = (
        "OUTPUT_DIR",
    )

    _output_dir: str

    def __init__(self, config: Mapping[str, Any]) -> None:
        self._check_config_fields(config)

        self._output_dir = config["OUTPUT_DIR"]

    def connect(self) -> None:
        logging.info(f"Writing reports to {self._output_dir}...")
        os.makedirs(self._output_dir, exist_ok=True)

    def save_report(self, report: Mapping[str, Any]) -> Optional[str]:
        file_name = re.sub(r"[^A-Za-z0-9_.-]+", "_", report["name"]) + ".json"
        path = os.path.join(self._output_dir, file_name)
        with open(path, "w", encoding="utf-8") as report_file:
            report_file.write(dumps_report(report))

        logging.info(f"Report saved: {path}")
        return path
