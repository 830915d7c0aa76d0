"""End-to-end checks on the shipped symbol files."""
import numpy as np
import pytest

from toruspdo.matrix import build_assoc_matrix, gram_block
from toruspdo.riesz import Verdict, classify
from toruspdo.spectral import (
    DiscreteSpectrumVerdict,
    InvertibilityVerdict,
    build_spectral_report,
    spectral_report_to_dict,
    write_discs_csv,
    discrete_spectrum_conditions,
    eigensolve_truncated,
    invertibility_test,
)
from toruspdo.symbol import fourier_table, load_symbol_file, sample_symbol


def load(symbols_dir, name, Q=256, K=64):
    return load_symbol_file(str(symbols_dir / f"{name}.json"), Q=Q, K=K)


def test_potential_times_bracket_has_compact_inverse(symbols_dir):
    sym = load(symbols_dir, "bracket_potential")
    grid = sample_symbol(sym, 256, 64)
    table = fourier_table(grid, 8)
    result = invertibility_test(table, grid, 32)
    assert result.verdict is InvertibilityVerdict.INVERTIBLE
    assert result.sup_ratio_col == pytest.approx(0.5)
    assert result.sup_ratio_row < 1.0
    assert result.compact_inverse
    assert discrete_spectrum_conditions(table, 32)["verdict"] is DiscreteSpectrumVerdict.HOLDS

    values = eigensolve_truncated(build_assoc_matrix(table, 16))
    assert np.abs(values).min() >= result.inf_center * (1.0 - result.sup_ratio) - 1e-8


def test_example_report_eigenvalues(symbols_dir):
    sym = load(symbols_dir, "square_plus_shift")
    report = build_spectral_report(sym, 16, 64, 256, 8, lambdas=[0.5])
    assert report.passed
    assert np.allclose(np.sort(report.eigenvalues.real), np.sort(np.arange(-16, 17) ** 2.0))
    assert report.resolvent_tests[0].exclusion_radius == pytest.approx(0.25)


def test_report_outputs(symbols_dir, tmp_path):
    report = build_spectral_report(load(symbols_dir, "identity", K=16), 8, 16, 64, 4)
    data = spectral_report_to_dict(report)
    assert data["passed"] is True
    assert data["window"] == {"n": 8, "K": 16, "Q": 64, "M": 4, "band": 0, "trusted_radius": 8}
    assert data["norm"]["schur_bound"] == pytest.approx(1.0)

    path = tmp_path / "discs.csv"
    write_discs_csv(report.discs, str(path))
    lines = path.read_text().splitlines()
    assert len(lines) == 18
    assert lines[9] == "0,1,0,0,0"


def test_decaying_symbol_is_compact(symbols_dir):
    result = classify(load(symbols_dir, "decaying"))
    assert result.compact_L2 is Verdict.YES
    assert result.tail_estimate == pytest.approx(1.0 / np.sqrt(1 + 64 ** 2), abs=1e-12)


@pytest.mark.slow
def test_indicator_gram_entries_decay(symbols_dir):
    sym = load_symbol_file(str(symbols_dir / "indicator.json"))
    assert (sym.x_resolution, sym.k_window) == (4096, 16)
    grid = sample_symbol(sym, 4096, 16)
    block = gram_block(fourier_table(grid, 1024), grid, 16)
    ks = np.arange(-16, 17)
    for a, j in enumerate(ks):
        for b, k in enumerate(ks):
            if j == k or min(abs(j), abs(k)) < 4:
                continue
            assert abs(block[a, b]) <= 2.0 ** -max(abs(j), abs(k)) + 1e-3


@pytest.mark.slow
def test_strictly_singular_symbol_file(symbols_dir):
    sym = load_symbol_file(str(symbols_dir / "strictly_singular.json"))
    assert sym.x_resolution == 4096
    assert classify(sym).riesz_Lp is Verdict.YES
