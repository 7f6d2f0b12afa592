"""
Fixtures compartilhadas pelos testes do MMBeamSim.
"""

import sys
from pathlib import Path
from typing import Callable, List

import numpy as np
import pytest

# Raiz do projeto no path para `import src...`
ROOT = Path(__file__).parent.parent
sys.path.insert(0, str(ROOT))

from src.channel.model import ChannelParams, ChannelRealization, draw_user_channel  # noqa: E402


def random_complex(rng: np.random.Generator, rows: int, cols: int) -> np.ndarray:
    return (rng.standard_normal((rows, cols)) + 1j * rng.standard_normal((rows, cols))) / np.sqrt(2)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(1234)


@pytest.fixture
def make_channels() -> Callable[..., List[ChannelRealization]]:
    """Fábrica de drops: make_channels(k, n_t, n_r, seed)."""

    def factory(k_users: int = 3, n_t: int = 16, n_r: int = 4, seed: int = 0,
                **overrides) -> List[ChannelRealization]:
        params = ChannelParams(n_t=n_t, n_r=n_r, **overrides)
        generator = np.random.default_rng(seed)
        return [draw_user_channel(params, generator) for _ in range(k_users)]

    return factory


@pytest.fixture
def example_config_path() -> Path:
    return ROOT / "config.example.json"
