import pytest

from fscat.specio import bundled_names, load_bundled

_CACHE = {}


def bundled(name):
    """Bundled categories, loaded once per session (they are immutable)."""
    if name not in _CACHE:
        _CACHE[name] = load_bundled(name)
    return _CACHE[name]


ALL_BUNDLED = tuple(bundled_names())

# every bundled spec that is pseudo-unitary with its canonical pivotal
PSEUDO_UNITARY = tuple(n for n in ALL_BUNDLED if n != "yang_lee")


@pytest.fixture(params=ALL_BUNDLED)
def any_bundled(request):
    return bundled(request.param)
