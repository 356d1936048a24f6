import json
import math

import pytest
from hypothesis import HealthCheck, settings

from pivotal.config import get_settings
from pivotal.data.types.weights import validate_weights

# fresh_settings is autouse and holds no per-example state.
settings.register_profile("pivotal", suppress_health_check=[HealthCheck.function_scoped_fixture])
settings.load_profile("pivotal")


@pytest.fixture(autouse=True)
def fresh_settings():
    """Reload settings around every test so PIVOTAL_* changes never leak"""
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


@pytest.fixture
def six_weights():
    """An n=6, k=2 instance with unequal weights"""
    return validate_weights([0.05, 0.1, 0.15, 0.2, 0.25, 0.25], k=2)


@pytest.fixture
def write_json(tmp_path):
    def _write(name, document):
        path = tmp_path / name
        path.write_text(json.dumps(document))
        return str(path)

    return _write


def _capped_weights(raw, k):
    total = math.fsum(raw)
    weights = [value / total for value in raw]
    limit = 1.0 / k
    while any(w > limit for w in weights):
        weights = [min(w, limit) for w in weights]
        free = [i for i, w in enumerate(weights) if w < limit]
        scale = (1.0 - limit * (len(weights) - len(free))) / math.fsum(weights[i] for i in free)
        for i in free:
            weights[i] *= scale
    return weights


@pytest.fixture(scope="session")
def capped_weights():
    """Turns positive raw values into relative weights capped at 1/k"""
    return _capped_weights
