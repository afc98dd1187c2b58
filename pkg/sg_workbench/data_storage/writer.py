"""Controllers for manipulating report engines."""
import importlib
import logging
from typing import Any, Mapping, Optional

from sg_workbench.data_storage.engines import Engine


class Writer(object):
    """
    Report writer: checks engine validity,
    initializes engine, saves a report to its destination.
    """
    VALID_ENGINES = (
        "LogOutput",
        "JSONOutput",
    )

    _engine: Engine

    def __init__(self, engine_name: str, config: Mapping) -> None:
        """Validates writer engine name and passes config section for initialization.

        Arguments:
            engine_name {str} -- Writer engine name from config file. Must match engine class name.
            config {Mapping} -- Config file section for appropriate writer engine

        Raises:
            ValueError: When provided engine name is invalid
            KeyError: When the config section lacks a required field
        """
        if engine_name in self.VALID_ENGINES:
            ValidEngineClass = getattr(
                importlib.import_module("sg_workbench.data_storage.engines"),
                engine_name)
            self._engine = ValidEngineClass(config)
        else:
            raise ValueError(f"Invalid writer engine: {engine_name}")

        logging.info(f"Writer engine initialized: {engine_name}")

    def save(self, report: Mapping[str, Any]) -> Optional[str]:
        """Controls the engine lifecycle to save one report."""
        self._engine.connect()
        try:
            return self._engine.save_report(report)
        finally:
            self._engine.disconnect()
