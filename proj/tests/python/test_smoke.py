# Copyright 2026 The ccplace Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import json

import pytest

import ccplace


def hull(k, dist):
    return ccplace.build_base_set(ccplace.enumerate_candidates(k, dist), k, len(dist))


def test_zipf_and_group_probability():
    d = ccplace.PopularityDistribution.zipf(4, 1.0)
    assert d.probs == pytest.approx([0.12, 0.16, 0.24, 0.48], abs=1e-14)
    two = ccplace.PopularityDistribution.from_probs([0.7, 0.3])
    assert two.original_index == [1, 0]
    assert ccplace.group_probability(two, 2, [0, 1]) == pytest.approx(0.42)
    with pytest.raises(ValueError):
        ccplace.PopularityDistribution.from_probs([0.5, 0.7])


def test_uniform_hull_and_staircase():
    base = hull(4, ccplace.PopularityDistribution.zipf(4, 0.0))
    assert [c.m for c in base.cases] == [0, 1, 2, 3, 4]
    assert [c.r for c in base.cases] == pytest.approx([4, 1.5, 2 / 3, 0.25, 0], abs=1e-12)
    gammas = [s.gamma for s in ccplace.price_staircase(base).segments]
    assert gammas == pytest.approx([2.5, 5 / 6, 5 / 12, 0.25], abs=1e-12)


def test_rmsc_jrsm_and_curve():
    base = hull(4, ccplace.PopularityDistribution.zipf(4, 0.0))
    sol = ccplace.solve_rmsc(1.5, base)
    assert sol.theta == 0.5
    assert sol.rate == pytest.approx(13 / 12, abs=1e-12)
    assert ccplace.storage(sol.y) == pytest.approx(1.5, abs=1e-12)
    assert ccplace.solve_jrsm(5 / 6, base).chosen.m == 1.0
    curve = ccplace.optimal_rate_curve(base, [0.0, 0.5, 4.0])
    assert [r for _, r in curve] == pytest.approx([4, 2.75, 0], abs=1e-12)


def test_placement_rates_and_delivery():
    d = ccplace.PopularityDistribution.from_probs([0.12, 0.16, 0.24, 0.48])
    y = ccplace.canonical_to_matrix(ccplace.CanonicalPlacement(2, 2), 4, 4)
    assert y.rows()[0] == [1.0, 0.0, 0.0, 0.0, 0.0]
    assert ccplace.expected_rate_exact(y, d) == pytest.approx(1.772032, abs=1e-12)
    assert ccplace.exhaustive_expected_rate(y, d) == pytest.approx(1.772032, abs=1e-12)
    rate, ok = ccplace.delivery_rate([0, 1, 2, 3], y)
    assert ok and rate > 0
    est = ccplace.monte_carlo_rate(y, d, 20000, seed=3)
    assert abs(est.estimate - 1.772032) <= 4 * est.standard_error


def test_oracle():
    d = ccplace.PopularityDistribution.zipf(3, 0.0)
    res = ccplace.numeric_rmsc(1.0, d, 3)
    assert res.rate == pytest.approx(1.0, abs=1e-3)
    assert 0 <= res.gap_certificate <= 1e-6


def test_cli_entry():
    code, out, err = ccplace.cli(["sweep", "--k", "3", "--n", "4", "--grid", "3"])
    assert code == 0, err
    assert out.splitlines()[0] == "M,rate,Q_1,Q_2,Q_3"
    code, out, _ = ccplace.cli(["place", "--k", "3", "--n", "4", "--m", "1"])
    assert code == 0
    assert json.loads(out)["m_used"] == pytest.approx(1.0)
    code, _, err = ccplace.cli(["place", "--m", "99"])
    assert code == 2 and err
