import hashlib
import logging
import os
import threading
from collections import OrderedDict
from typing import Any, Dict, Hashable, List, Optional

import colorlog
import psutil
import yaml
from pydantic import BaseModel, Field

logger = logging.getLogger(__name__)

CONFIG_FILE = ".pleijelrc.yml"


def import_config(config_path: str = CONFIG_FILE) -> None:
    # If env var PLEIJEL_YAML_LOADED is not set, load .pleijelrc.yml
    if os.getenv("PLEIJEL_YAML_LOADED") is None:
        if os.path.exists(config_path):
            with open(config_path, "r") as f:
                config = yaml.safe_load(f) or {}

            # Set env vars to the values in .pleijelrc.yml
            for k, v in config.items():
                if v is not None:
                    os.environ[k] = str(v)

        os.environ["PLEIJEL_YAML_LOADED"] = "1"


def hash_object(obj: Any) -> str:
    # Convert the object to a string representation
    obj_str = str(obj).encode("utf-8")

    # Calculate the SHA256 hash
    sha256_hash = hashlib.sha256(obj_str)

    return sha256_hash.hexdigest()


def _env_bool(name: str, default: bool) -> bool:
    value = os.getenv(name)
    if value is None:
        return default
    return value.strip().lower() in ("1", "true", "yes", "on")


def default_workers() -> int:
    return psutil.cpu_count() or 1


class SolverParams(BaseModel, extra="forbid"):
    """Caps and tolerances shared by every solver.

    Unset fields are read from `PLEIJEL_*` environment variables (possibly
    populated from `.pleijelrc.yml`), then fall back to the defaults below.
    """

    nu_max: float = Field(..., gt=0, description="Largest Bessel order accepted.")
    x_max: float = Field(..., gt=0, description="Largest Bessel argument accepted.")
    r_max: float = Field(
        ..., gt=0, lt=1, description="Largest annulus inner radius accepted."
    )
    zero_rtol: float = Field(
        ..., gt=0, description="Relative step tolerance for zero polishing."
    )
    max_iter: int = Field(..., gt=0, description="Root finder iteration cap.")
    scan_max_steps: int = Field(
        ..., gt=0, description="Cap on bracket-scan steps for a single zero."
    )
    merge_rtol: float = Field(
        ..., gt=0, description="Relative gap below which eigenvalues are merged."
    )
    zero_cache: bool = Field(..., description="Memoize zero sequences.")
    max_workers: int = Field(..., gt=0, description="Worker processes for fan-out.")

    def __init__(self, **kwargs: Any) -> None:
        kwargs.setdefault("nu_max", float(os.getenv("PLEIJEL_NU_MAX", "2000")))
        kwargs.setdefault("x_max", float(os.getenv("PLEIJEL_X_MAX", "1e6")))
        kwargs.setdefault("r_max", float(os.getenv("PLEIJEL_R_MAX", "0.999")))
        kwargs.setdefault("zero_rtol", float(os.getenv("PLEIJEL_ZERO_RTOL", "1e-12")))
        kwargs.setdefault("max_iter", int(os.getenv("PLEIJEL_MAX_ITER", "200")))
        kwargs.setdefault(
            "scan_max_steps", int(os.getenv("PLEIJEL_SCAN_MAX_STEPS", "100000"))
        )
        kwargs.setdefault("merge_rtol", float(os.getenv("PLEIJEL_MERGE_RTOL", "1e-8")))
        kwargs.setdefault("zero_cache", _env_bool("PLEIJEL_ZERO_CACHE", True))

        # The env var caps the worker count, it never raises it
        workers = default_workers()
        if os.getenv("PLEIJEL_MAX_WORKERS") is not None:
            workers = min(workers, int(os.environ["PLEIJEL_MAX_WORKERS"]))
        kwargs.setdefault("max_workers", max(1, workers))

        super().__init__(**kwargs)

    def tolerances(self) -> Dict[str, Any]:
        """Tolerances recorded alongside emitted tables."""
        return {
            "zero_rtol": self.zero_rtol,
            "merge_rtol": self.merge_rtol,
            "max_iter": self.max_iter,
            "nu_max": self.nu_max,
            "x_max": self.x_max,
            "r_max": self.r_max,
        }


def get_solver_params(params: Optional[SolverParams] = None) -> SolverParams:
    if params is not None:
        return params
    import_config()
    return SolverParams()


def configureLogging(level: str) -> None:
    formatter = colorlog.ColoredFormatter(
        "%(log_color)s%(asctime)s %(levelname)-8s%(reset)s %(blue)s%(message)s",
        datefmt="%Y-%m-%d %H:%M:%S",
        log_colors={
            "DEBUG": "cyan",
            "INFO": "green",
            "WARNING": "yellow",
            "ERROR": "red",
            "CRITICAL": "bold_red",
        },
    )

    logger = logging.getLogger("pleijel")
    if logger.hasHandlers():
        logger.handlers.clear()

    stream_handler = logging.StreamHandler()
    stream_handler.setFormatter(formatter)

    logger.addHandler(stream_handler)
    logger.setLevel(level)


def order_key(order: float) -> float:
    """Cache key for a real order: rounded to 1e-12."""
    return round(float(order), 12)


class ZeroCache:
    """Thread-safe memo of ascending zero sequences.

    Each key maps to the zeros z_1 < z_2 < ... computed so far for one
    sequence. Fills only ever extend a sequence, so concurrent fills of the
    same key are idempotent. Reads hand out copies.
    """

    def __init__(self, maxsize: int = 4096) -> None:
        self._maxsize = maxsize
        self._data: "OrderedDict[Hashable, List[float]]" = OrderedDict()
        self._lock = threading.Lock()

    def get(self, key: Hashable) -> List[float]:
        with self._lock:
            zeros = self._data.get(key)
            if zeros is None:
                return []
            self._data.move_to_end(key)
            return list(zeros)

    def extend(self, key: Hashable, zeros: List[float]) -> None:
        with self._lock:
            current = self._data.get(key, [])
            if len(zeros) > len(current):
                self._data[key] = list(zeros)
            if key in self._data:
                self._data.move_to_end(key)
            while len(self._data) > self._maxsize:
                self._data.popitem(last=False)

    def clear(self) -> None:
        with self._lock:
            self._data.clear()

    def __len__(self) -> int:
        with self._lock:
            return len(self._data)
