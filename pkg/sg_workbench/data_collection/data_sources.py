"""Various ways to obtain the algebra a command works on."""
import json
import logging
from typing import Any, Mapping, Optional, Tuple

from sg_workbench.algebra.fields import PrimeField, RationalField
from sg_workbench.corpus import DEFAULT_CHARACTERISTIC, corpus_algebra
from sg_workbench.data_collection.parsers import DocumentParser
from sg_workbench.data_objects import Workload
from sg_workbench.errors import InputError, InvalidDocument


class AlgebraSource():
    """
    Base class for actual algebra sources.
    Meant to be instantiated by a Loader.
    Methods are overridden by subclasses if actually used.

    Fields:
    SOURCE_NAME: Label put into Workload objects to identify their origin.
    REQUIRED_CONFIG_FIELDS: Settings required to be present in config section for source to function properly.

    Usage:
    1. connect()
    2. collect_data()
    3. disconnect()
    """
    SOURCE_NAME: str
    REQUIRED_CONFIG_FIELDS: Tuple[str, ...] = ()

    def __init__(self, config: Mapping) -> None:
        """Sets required configuration settings for reading an algebra.

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
        """Actions required to open a source."""
        pass

    def collect_data(self) -> Workload:
        """Actions required to build the algebra and its modules."""
        pass

    def disconnect(self) -> None:
        """Actions needed to close a source. Used during normal functioning and by exception handlers."""
        pass


class JSONFile(AlgebraSource):
    """
    Reads a JSON document from disk.
    Input documents describe an algebra and modules; report documents
    (for verify) embed the algebra they were computed over.
    """
    SOURCE_NAME: str = "JSON file"
    REQUIRED_CONFIG_FIELDS: Tuple[str, ...] = (
        "FILE_PATH",
    )

    _file_path: str
    _file: Optional[Any] = None

    def __init__(self, config: Mapping) -> None:
        self._check_config_fields(config)

        self._file_path = config["FILE_PATH"]

    def connect(self) -> None:
        logging.info(f"Opening JSON file {self._file_path}...")
        try:
            self._file = open(self._file_path, "r", encoding="utf-8")
        except OSError as error:
            raise InputError(f"Cannot open {self._file_path}: {error.strerror}") from error

    def collect_data(self) -> Workload:
        try:
            document = json.load(self._file)
        except json.JSONDecodeError as error:
            raise InvalidDocument(f"{self._file_path}:{error.lineno}:{error.colno}: {error.msg}") from error
        if not isinstance(document, dict):
            raise InvalidDocument(f"{self._file_path}: top level must be a JSON object")
        parser = DocumentParser()
        parser.parse(document)
        algebra, modules = parser.get_results()
        logging.info(f"Loaded {algebra.name or 'algebra'} of dimension {algebra.dim} "
                     f"with {len(modules)} module(s) from {self._file_path}")
        return Workload(algebra, modules, document, self._file_path)

    def disconnect(self) -> None:
        if self._file:
            self._file.close()
            self._file = None


class Corpus(AlgebraSource):
    """
    Named algebra from the built-in corpus.
    CHARACTERISTIC is optional; 0 selects the rationals.
    """
    SOURCE_NAME: str = "corpus"
    REQUIRED_CONFIG_FIELDS: Tuple[str, ...] = (
        "NAME",
    )

    _name: str
    _characteristic: int

    def __init__(self, config: Mapping) -> None:
        self._check_config_fields(config)

        self._name = config["NAME"]
        try:
            self._characteristic = int(config.get("CHARACTERISTIC", DEFAULT_CHARACTERISTIC))
        except ValueError as error:
            raise InputError("CHARACTERISTIC must be an integer") from error

    def collect_data(self) -> Workload:
        field = RationalField() if self._characteristic == 0 else PrimeField(self._characteristic)
        algebra = corpus_algebra(self._name, field)
        logging.info(f"Loaded corpus algebra {algebra.name} over {field}")
        return Workload(algebra, {}, None, f"corpus:{self._name}")
