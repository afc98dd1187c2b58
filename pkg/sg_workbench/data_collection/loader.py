"""Controllers for manipulating algebra sources."""
import importlib
import logging
from typing import Mapping

from sg_workbench.data_collection.data_sources import AlgebraSource
from sg_workbench.data_objects import Workload


class Loader(object):
    """Algebra source manager: checks source validity, initializes the source, collects the workload."""
    VALID_DATA_SOURCES = (
        "JSONFile",
        "Corpus",
    )

    _data_source: AlgebraSource

    def __init__(self, data_source_name: str, config: Mapping) -> None:
        """Validates data source name and passes config section for initialization.

        Arguments:
            data_source_name {str} -- Data source name from config file. Must match data source class name.
            config {Mapping} -- Config file section for appropriate data source

        Raises:
            ValueError: When provided data source name is invalid
            KeyError: When the config section lacks a required field
        """
        if data_source_name in self.VALID_DATA_SOURCES:
            ValidDataSourceClass = getattr(
                importlib.import_module("sg_workbench.data_collection.data_sources"),
                data_source_name)
            self._data_source = ValidDataSourceClass(config)
        else:
            raise ValueError(f"Invalid data source: {data_source_name}")

        logging.info(f"Data source initialized: {data_source_name}")

    def load_data(self) -> Workload:
        """Controls the source lifecycle; errors propagate after the source is closed."""
        self._data_source.connect()
        try:
            return self._data_source.collect_data()
        finally:
            self._data_source.disconnect()
