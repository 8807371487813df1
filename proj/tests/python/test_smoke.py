import math

import pytest

import foelkit


def test_chain_construction():
    chain = foelkit.SpinChain(["1/2", "1", "3/2"], [1.0, 0.5])
    assert chain.length == 3
    assert chain.hilbert_dim == 2 * 3 * 4
    assert chain.spins == ["1/2", "1", "3/2"]
    assert foelkit.max_total_spin(chain) == "3"


def test_multiplicities_and_admissible_spins():
    chain = foelkit.SpinChain(["1/2"] * 4, [1.0] * 3)
    assert foelkit.multiplicity(chain, "2") == 1
    assert foelkit.multiplicity(chain, "1") == 3
    assert foelkit.multiplicity(chain, "0") == 2
    assert foelkit.admissible_spins(chain) == ["2", "1", "0"]


def test_basis_and_sector_matrix():
    chain = foelkit.SpinChain(["1/2"] * 3, [1.0] * 2)
    basis = foelkit.enumerate_hw_basis(chain, "1/2")
    assert len(basis) == 2
    assert basis[0].arcs == [(0, 1)]
    assert "arcs=(1,2)" in str(basis[0])

    m = foelkit.sector_hamiltonian(chain, "1/2")
    assert m["dim"] == 2
    dense = [[0.0, 0.0], [0.0, 0.0]]
    for r, c, v in zip(m["rows"], m["cols"], m["values"]):
        dense[r][c] += v
    assert dense[0][0] == pytest.approx(4.0)
    assert dense[0][1] == pytest.approx(-2.0)


def test_energies_and_ordering():
    chain = foelkit.SpinChain(["1/2"] * 3, [1.0] * 2)
    energy, dim = foelkit.min_energy_sector(chain, "1/2")
    assert energy == pytest.approx(2.0, abs=1e-10)
    assert dim == 2

    report = foelkit.foel_check(chain)
    assert report["status"] == "holds_strict"
    energies = [row["energy"] for row in report["entries"]]
    assert energies == sorted(energies)

    assert foelkit.spectral_gap(chain) == pytest.approx(2.0, abs=1e-10)


def test_eigenvalues_below():
    chain = foelkit.SpinChain(["1/2"] * 3, [1.0] * 2)
    entries = foelkit.eigenvalues_below(chain, 3.0)
    assert entries == [("3/2", pytest.approx(0.0, abs=1e-10)),
                       ("1/2", pytest.approx(2.0, abs=1e-10))]


def test_biquadratic_boundary():
    sweep = foelkit.biquadratic_sweep(2, [0.0, 1.0 / 3.0, 0.5])
    assert [row["status"] for row in sweep] == [
        "holds_strict",
        "holds_non_strict",
        "violated",
    ]


def test_dense_method_agrees():
    chain = foelkit.SpinChain(["1", "1/2"], [0.7])
    auto = foelkit.energy_table(chain)["entries"]
    dense = foelkit.energy_table(chain, method="dense")["entries"]
    for a, d in zip(auto, dense):
        assert a["energy"] == pytest.approx(d["energy"], abs=1e-8)


def test_errors_are_typed():
    chain = foelkit.SpinChain(["1/2", "1/2"], [1.0])
    with pytest.raises(foelkit.NotAdmissibleError):
        foelkit.min_energy_sector(chain, "1/2")


def test_gap_scaling_small():
    gap20 = foelkit.spectral_gap(foelkit.SpinChain(["1/2"] * 20, [1.0] * 19))
    expected = 4.0 * (1.0 - math.cos(math.pi / 20.0))
    assert gap20 == pytest.approx(expected, abs=1e-10)
