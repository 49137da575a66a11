# Copyright 2026 The cqfi Authors
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
import math
import pathlib

import numpy as np
import pytest

import cqfi

SX = np.array([[0, 1], [1, 0]], dtype=complex)
SZ = np.array([[1, 0], [0, -1]], dtype=complex)
CONFIGS = pathlib.Path(__file__).resolve().parents[2] / "configs"


def fixture():
    return np.diag([0.7, 0.3]).astype(complex), 0.1 * SZ + 0.2 * SX


def test_sld_matches_hand_values():
    rho, drho = fixture()
    s = cqfi.sld(rho, drho)
    want = np.array([[1 / 7, 0.4], [0.4, -1 / 3]])
    assert np.allclose(s["sld"], want, atol=1e-14)
    assert math.isclose(s["qfi"], np.trace(rho @ want @ want).real, rel_tol=1e-14)
    assert math.isclose(s["incoherent"] + s["coherent"], s["qfi"], rel_tol=1e-12)


def test_cqfi_decomposition_and_negative_cross():
    rho, drho = fixture()
    a = 1.5
    c = cqfi.cqfi(rho, drho, np.array([math.cos(a / 2), math.sin(a / 2)], dtype=complex))
    assert math.isclose(c["total"], c["ic"] + c["coh"] + c["cross"], rel_tol=1e-12)
    assert math.isclose(c["cross"], -8 / 105 * math.sin(a), rel_tol=1e-12)


def test_eigenbasis_average_is_qfi():
    rho, drho = fixture()
    f = cqfi.qfi(rho, drho)
    avg = sum(rho[n, n].real * cqfi.cqfi(rho, drho, np.eye(2, dtype=complex)[n])["total"] for n in range(2))
    assert math.isclose(avg, f, rel_tol=1e-12)


def test_errors_surface_as_exceptions():
    rho, _ = fixture()
    with pytest.raises(cqfi.CqfiError, match="NonTraceless"):
        cqfi.sld(rho, np.eye(2, dtype=complex))


def test_thermal_sensor_reference_point():
    r = cqfi.thermal_sensor(1.0, 1.0, 1.0)
    assert math.isclose(r["p_plus"], 0.19557031749304309, rel_tol=1e-14)
    assert math.isclose(r["f_c_rotation"], 0.25 * math.tanh(math.sqrt(0.5)) ** 2, rel_tol=1e-14)
    assert abs(r["numeric"]["f_c_plus"] - r["f_c_rotation"]) < 1e-6


def test_gaussian_outcome_independence():
    mean, cov = np.array([0.3, -0.2]), np.array([[0.9, 0.25], [0.25, 0.6]])
    fq = cqfi.gaussian_qfi(mean, cov, 1.3)
    assert math.isclose(fq, 4 * 1.3**2 * cov[0, 0] / np.linalg.det(cov), rel_tol=1e-14)
    for alpha in (-2.0, 0.3, 2.5):
        assert math.isclose(cqfi.gaussian_cqfi(mean, cov, 1.3, 1.0, alpha), fq, rel_tol=1e-8)


def test_driven_qubit_ensemble_and_trajectory():
    ens = cqfi.driven_qubit_ensemble(t_final=2.0, dt=0.01)
    assert len(ens["t"]) == 201
    rho = np.asarray(ens["rho"][-1])
    assert math.isclose(np.trace(rho).real, 1.0, abs_tol=1e-12)
    assert all(j >= l * l - 1e-12 for j, l in zip(ens["J"], ens["L"]))
    tr = cqfi.driven_qubit_trajectory(t_final=2.0, dt=0.01, seed=7, index=3)
    again = cqfi.driven_qubit_trajectory(t_final=2.0, dt=0.01, seed=7, index=3)
    assert tr["f"] == again["f"]
    assert np.allclose(np.array(tr["f"]), np.array(tr["ic"]) + np.array(tr["coh"]) + np.array(tr["cross"]), atol=1e-9)


def test_validate_and_run(tmp_path):
    echo = json.loads(cqfi.validate_config(str(CONFIGS / "gaussian_force.json")))
    assert echo["experiment"] == "gaussian_force"
    r = cqfi.run(str(CONFIGS / "gaussian_force.json"), out=str(tmp_path))
    assert sorted(r["checks"]) == list(range(1, 11))
    assert r["checks"][8]["status"] == "pass"
    assert (tmp_path / "audit.json").exists()
