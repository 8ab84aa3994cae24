"""랜덤 앙상블 생성기와 시드 파생."""
from .ensemble_sampler import EnsembleSampler
from .seeding import derive_seed

__all__ = ["EnsembleSampler", "derive_seed"]
