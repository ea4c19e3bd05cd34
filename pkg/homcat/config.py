from __future__ import annotations
import logging

from pydantic_settings import BaseSettings, SettingsConfigDict
from pydantic import Field

DEFAULT_LABELS = ["g", "h"]


class Settings(BaseSettings):
    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",
    )

    app_name: str = "homcat"
    log_level: str = Field(default="INFO", alias="HOMCAT_LOG_LEVEL")

    # Global override for every enumeration bound below
    budget: int | None = Field(default=None, gt=0, alias="HOMCAT_BUDGET")

    hom_search_budget: int = Field(default=10_000_000, alias="HOMCAT_HOM_SEARCH_BUDGET")
    closure_budget: int = Field(default=50_000, alias="HOMCAT_CLOSURE_BUDGET")
    lattice_max_order: int = 24
    lattice_generator_size: int = 3
    group_ring_max_size: int = 4096
    tensor_max_generators: int = 256
    # Exhaustive triple scans on constructed rings run up to this order
    certify_max_order: int = 128

    seed: int = Field(default=20240611, alias="HOMCAT_SEED")

    # Free Hom-group sampler defaults
    sampler_trees: int = 1000
    sampler_max_leaves: int = 12
    sampler_weight_range: int = 3
    sampler_labels: list[str] = Field(default_factory=lambda: list(DEFAULT_LABELS))
    # Laws are checked on the first `sampler_triples` samples; strategy independence on all of them
    sampler_triples: int = 500
    sampler_random_strategies: int = 4

    @property
    def search_budget(self) -> int:
        return self.budget or self.hom_search_budget

    @property
    def closures(self) -> int:
        return self.budget or self.closure_budget

    @property
    def group_ring_bound(self) -> int:
        return self.budget or self.group_ring_max_size

    @property
    def tensor_bound(self) -> int:
        return self.budget or self.tensor_max_generators

    @property
    def lattice_order_bound(self) -> int:
        return self.budget or self.lattice_max_order


settings = Settings()


def configure_logging(level: str | None = None) -> None:
    root = logging.getLogger()
    if not root.handlers:
        logging.basicConfig(level=(level or settings.log_level).upper(),
                            format='%(asctime)s %(levelname)s [%(name)s] %(message)s')
