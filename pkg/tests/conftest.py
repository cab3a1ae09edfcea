"""
Configuración común de pytest: path del proyecto, perfiles de hypothesis
y base de datos temporal
"""
import os
import sys

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.join(os.path.dirname(os.path.abspath(__file__)), '..'))

settings.register_profile(
    'default', max_examples=25, deadline=None,
    suppress_health_check=[HealthCheck.too_slow])
settings.register_profile(
    'ci', max_examples=60, deadline=None, derandomize=True,
    suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get('HYPOTHESIS_PROFILE', 'default'))


@pytest.fixture
def db_temporal(tmp_path, monkeypatch):
    """Apunta HOPF_DB_PATH a un archivo nuevo y reinicia la configuración cacheada"""
    from models import configuracion

    ruta = tmp_path / 'hopf_test.db'
    monkeypatch.setenv('HOPF_DB_PATH', str(ruta))
    monkeypatch.setattr(configuracion, '_config', None)
    yield ruta


@pytest.fixture
def rng():
    import random
    return random.Random(20240917)
