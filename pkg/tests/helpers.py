"""Shared model builders for unit, property, and acceptance tests.

Models are constructed rather than filtered: given raw weights and a target
utilization, the on-state mass is scaled so the resulting utilization never
exceeds the target.  The same exact-rational construction feeds both
backends, so float and rational twins describe the same model up to float
rounding of the inputs.
"""

from __future__ import annotations

from fractions import Fraction

import hypothesis.strategies as st

from onoffqueue import FLOAT64, ModelSpec, NumericConfig, validate

TABLE1_F = ("0.8", "0.1", "0.05", "0.05")
TABLE1_G = ("0.4", "0.4", "0.2")
TABLE2_F = ("0.6", "0.2", "0.1", "0.05", "0.05")
TABLE2_G = ("0.2", "0.6", "0.1", "0.1")


def build_model(on_weights, g_weights, rho_pct, backend=FLOAT64) -> ModelSpec:
    """Validated model with utilization at most rho_pct / 100.

    on_weights are relative weights for on-period lengths 1..n; g_weights
    for batch sizes 1..m.  The off-state probability is chosen so the
    utilization hits the target unless that would push the on mass past
    0.95, in which case the utilization lands below the target.
    """
    on_total = sum(on_weights)
    on = [Fraction(w, on_total) for w in on_weights]
    g_total = sum(g_weights)
    g = [Fraction(w, g_total) for w in g_weights]
    g_bar = sum(i * p for i, p in enumerate(g, start=1))
    mean_on = sum(i * p for i, p in enumerate(on, start=1))
    target = Fraction(rho_pct, 100)
    f_bar_needed = target / (g_bar - target)  # g_bar >= 1 > target
    s = min(f_bar_needed / mean_on, Fraction(19, 20))
    f = [1 - s] + [s * w for w in on]
    if backend == FLOAT64:
        f = [float(v) for v in f]
        g = [float(v) for v in g]
    return validate(ModelSpec(tuple(f), tuple(g)), NumericConfig(backend=backend))


def light_f_vector(on_weights, f_bar_pct) -> tuple:
    """Exact-rational f with mean on-period f_bar_pct / 100 (at most 0.3).

    Light enough that constant batches up to r = 4 stay stable.
    """
    if not 0 < f_bar_pct <= 30:
        raise ValueError("f_bar_pct must be in (0, 30]")
    on_total = sum(on_weights)
    on = [Fraction(w, on_total) for w in on_weights]
    mean_on = sum(i * p for i, p in enumerate(on, start=1))
    s = Fraction(f_bar_pct, 100) / mean_on
    return tuple([1 - s] + [s * w for w in on])


def random_models(rng, count, n_max=6, m_max=5, rho_max_pct=85, backend=FLOAT64):
    """Deterministic batch of validated models from a seeded numpy generator."""
    out = []
    for _ in range(count):
        n = int(rng.integers(1, n_max + 1))
        m = int(rng.integers(1, m_max + 1))
        on_w = [int(w) for w in rng.integers(1, 1000, size=n)]
        g_w = [int(w) for w in rng.integers(1, 1000, size=m)]
        rho_pct = int(rng.integers(5, rho_max_pct + 1))
        out.append(build_model(on_w, g_w, rho_pct, backend=backend))
    return out


@st.composite
def model_specs(draw, n_max=6, m_max=5, rho_max_pct=90, backend=FLOAT64):
    n = draw(st.integers(1, n_max))
    m = draw(st.integers(1, m_max))
    on_w = draw(st.lists(st.integers(1, 1000), min_size=n, max_size=n))
    g_w = draw(st.lists(st.integers(1, 1000), min_size=m, max_size=m))
    rho_pct = draw(st.integers(5, rho_max_pct))
    return build_model(on_w, g_w, rho_pct, backend=backend)


@st.composite
def light_f_vectors(draw, n_max=5):
    n = draw(st.integers(1, n_max))
    on_w = draw(st.lists(st.integers(1, 1000), min_size=n, max_size=n))
    f_bar_pct = draw(st.integers(2, 30))
    return light_f_vector(on_w, f_bar_pct)
