"""Data objects used by the workbench."""
from dataclasses import asdict, dataclass, field, replace
from typing import Any, Dict, Mapping, Optional, Tuple

from sg_workbench.algebra.algebras import Algebra
from sg_workbench.algebra.modules import Module
from sg_workbench.errors import InputError


@dataclass(init=True, repr=True, eq=True, order=False, unsafe_hash=False, frozen=True)
class Limits():
    """
    Numeric knobs shared by all searches:
    - syzygy cutoff and stabilization window for sg_hom and pd_status
    - shift range for Gamma tables
    - closure search caps
    - Leavitt word-length bounds
    - budgets of the exact/randomized linear algebra
    """
    syzygy_cutoff: int = 12
    shift_range: int = 5
    window: int = 3
    max_dim: int = 64
    max_depth: int = 4
    max_classes: int = 256
    length_bound: int = 8
    m_bound: int = 7
    iso_budget: int = 10 ** 6
    eigen_scan: int = 16
    max_hom_cells: int = 512
    max_chain_dim: int = 32
    seed: int = 0

    def validate(self) -> "Limits":
        for name, value in asdict(self).items():
            if name == "seed":
                continue
            if not isinstance(value, int) or value <= 0:
                raise InputError(f"Limit {name} must be a positive integer, got {value!r}")
        return self

    def replace(self, **changes) -> "Limits":
        values = asdict(self)
        values.update({key: value for key, value in changes.items() if value is not None})
        return Limits(**values).validate()

    @classmethod
    def from_config(cls, section: Mapping[str, str]) -> "Limits":
        """Read limits from a config section; option names are upper-case field names."""
        values: Dict[str, Any] = {}
        for name in asdict(cls()):
            option = name.upper()
            if option in section:
                try:
                    values[name] = int(section[option])
                except ValueError as error:
                    raise InputError(f"Config option {option} is not an integer") from error
        return cls(**values).validate()


@dataclass(init=True, repr=True, eq=False, order=False, unsafe_hash=False, frozen=True)
class RunConfig():
    """Everything one CLI invocation needs; embedded in every report."""
    command: str
    data_source: str
    writer_engine: str
    module: str = "top"
    period: int = 1
    multiple: int = 1
    dmax: int = 4
    degrees: Optional[Tuple[int, int]] = None
    limits: Limits = field(default_factory=Limits)

    @property
    def seed(self) -> int:
        return self.limits.seed

    @property
    def degree_range(self) -> Tuple[int, int]:
        if self.degrees is not None:
            return self.degrees
        return -self.limits.shift_range, self.limits.shift_range

    def validate(self) -> "RunConfig":
        self.limits.validate()
        if self.period < 1:
            raise InputError("--d must be positive")
        if self.multiple < 1:
            raise InputError("--n must be positive")
        if self.dmax < 1:
            raise InputError("--dmax must be positive")
        if self.degrees is not None and self.degrees[0] > self.degrees[1]:
            raise InputError(f"Empty degree range {self.degrees}")
        return self

    def as_dict(self) -> Dict[str, Any]:
        return {
            "command": self.command,
            "module": self.module,
            "period": self.period,
            "multiple": self.multiple,
            "dmax": self.dmax,
            "degrees": list(self.degree_range),
            "limits": asdict(self.limits),
        }

    @classmethod
    def from_dict(cls, values: Mapping[str, Any], **overrides) -> "RunConfig":
        """Rebuild the config embedded in a report."""
        try:
            limits = Limits(**values["limits"]).validate()
            run = cls(command=values["command"], data_source="", writer_engine="", module=values["module"],
                      period=values["period"], multiple=values["multiple"], dmax=values["dmax"],
                      degrees=tuple(values["degrees"]), limits=limits)
        except (KeyError, TypeError) as error:
            raise InputError(f"Report config is incomplete: {error}") from error
        return replace(run, **overrides).validate()


@dataclass(init=True, repr=True, eq=False, order=False, unsafe_hash=False, frozen=True)
class Workload():
    """
    What a data source delivers:
    - the algebra and the modules declared with it
    - the raw document, kept for report replay
    """
    algebra: Algebra
    modules: Mapping[str, Module] = field(default_factory=dict)
    document: Optional[Mapping[str, Any]] = None
    origin: str = ""
