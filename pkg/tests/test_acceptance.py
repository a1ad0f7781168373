"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line.

The lines are repeated in the "acceptance criteria" section of the pytest
terminal summary.
"""

import math
import time

import numpy as np

from spdcmodes import export, validation
from spdcmodes.analysis import normalize
from spdcmodes.cli import main
from spdcmodes.modes import dhg_expand, hg_mode
from spdcmodes.spectra import lg_spectrum

PI8 = math.pi / 8


def _summary(records):
    return "; ".join(f"{r['name']} dev={r['max_deviation']:.2e} tol={r['tolerance']:g}" for r in records)


def test_criterion_01_lg_closed_form_vs_oracle(acceptance):
    start = time.perf_counter()
    records = validation.lg_suite(l_max=4, rtol=1e-6, zero_atol=1e-10)
    elapsed = time.perf_counter() - start
    rec = records[0]
    acceptance(1, rec["passed"] and elapsed < 10,
               f"LG |l|<=4 x 4 angles: rel dev {rec['max_deviation']:.2e} (tol 1e-6), "
               f"zero dev {rec['max_zero_deviation']:.2e} (tol 1e-10), {elapsed:.2f} s (< 10 s)")


def test_criterion_02_hg_closed_form_vs_oracle(acceptance):
    start = time.perf_counter()
    records = validation.hg_suite(cap=3, rtol=1e-5, zero_atol=1e-9)
    elapsed = time.perf_counter() - start
    rec = records[0]
    acceptance(2, rec["passed"] and elapsed < 60,
               f"HG m,n<=3 x 4 angles: rel dev {rec['max_deviation']:.2e} (tol 1e-5), "
               f"zero dev {rec['max_zero_deviation']:.2e} (tol 1e-9), {elapsed:.2f} s (< 60 s)")


def test_criterion_03_selection_rules(acceptance):
    bad = validation.selection_mismatches(cap=4)
    acceptance(3, not bad, f"m,n<=4, both pump families: {len(bad)} mismatches")


def test_criterion_04_lg_spectrum_structure(acceptance):
    spec = lg_spectrum(PI8, 4)
    nonzero = [(idx, abs(a)) for idx, a in spec.entries() if a != 0]
    confined = all(abs(sum(idx)) == 1 for idx, _ in nonzero)
    decreasing = True
    for total in (1, -1):
        diag = sorted(((abs(i[0]) + abs(i[1]), m) for i, m in nonzero if sum(i) == total))
        orders = [o for o, _ in diag]
        mags = [m for _, m in diag]
        # entries of equal order are the l_s <-> l_i mirror pair and must agree
        for (o1, m1), (o2, m2) in zip(diag, diag[1:]):
            if o1 == o2:
                decreasing &= math.isclose(m1, m2, rel_tol=1e-12)
            else:
                decreasing &= m2 < m1
        decreasing &= orders == sorted(orders)
    ok = len(nonzero) == 16 and confined and decreasing
    acceptance(4, ok, f"{len(nonzero)} nonzero (need 16), confined={confined}, decreasing={decreasing}")


def test_criterion_05_schmidt_numbers(acceptance):
    lg, hg, _ = validation.schmidt_suite()
    scan = ", ".join(f"cap {r['window']}: {r['K']:.2f}" for r in hg["scan"])
    acceptance(5, lg["passed"] and hg["passed"],
               f"LG K={lg['K']:.3f} in [13.9, 16.9]; HG K={hg['K']:.3f} in [24.9, 40.5] "
               f"at cap {hg['window']} (scan: {scan})")


def test_criterion_06_single_vs_two_subspace(acceptance):
    rec = validation.schmidt_suite()[2]
    acceptance(6, rec["passed"], f"K(0)/K(pi/8) = {rec['ratio']:.4f} in [0.4, 0.6]")


def test_criterion_07_sweep_curves(acceptance):
    records = validation.sweep_suite()
    acceptance(7, all(r["passed"] for r in records), _summary(records))


def test_criterion_08_momentum_identities(acceptance):
    records = validation.appendix_suite()
    rng = np.random.default_rng(5)
    kx, ky = rng.normal(scale=1.2, size=(2, 50))
    dev = 0.0
    for m in range(6):
        for n in range(6):
            lhs = hg_mode((m, n), 1.0, (kx + ky) / math.sqrt(2), (kx - ky) / math.sqrt(2))
            rhs = sum(c * hg_mode(i, 1.0, kx, ky) for i, c in dhg_expand((m, n)))
            dev = max(dev, float(np.max(np.abs(lhs - rhs))))
    records.append({"name": "dhg_pointwise", "passed": dev <= 1e-10, "max_deviation": dev, "tolerance": 1e-10})
    acceptance(8, all(r["passed"] for r in records), _summary(records))


def test_criterion_09_pump_chain(acceptance):
    records = validation.pump_suite(n_theta=32)
    acceptance(9, all(r["passed"] for r in records), _summary(records))


def test_criterion_10_determinism_and_round_trip(acceptance, tmp_path, capsys):
    runs = []
    for k in range(2):
        d = tmp_path / f"run{k}"
        d.mkdir()
        codes = [
            main(["spectrum", "--basis", "lg", "--theta1-deg", "22.5", "--csv", str(d / "lg.csv"),
                  "--json", str(d / "lg.json"), "--svg", str(d / "lg.svg")]),
            main(["spectrum", "--basis", "hg", "--theta1-deg", "22.5", "--cap", "3",
                  "--csv", str(d / "hg.csv"), "--json", str(d / "hg.json"), "--svg", str(d / "hg.svg")]),
            main(["sweep", "--pair", "1,0", "--pair=-1,0", "--csv", str(d / "sw.csv"), "--svg", str(d / "sw.svg")]),
        ]
        files = sorted(d.iterdir())
        runs.append((codes, [(f.name, f.read_bytes()) for f in files]))
    capsys.readouterr()
    identical = runs[0] == runs[1] and runs[0][0] == [0, 0, 0]

    d = tmp_path / "run0"
    lossless = True
    for name in ("lg", "hg"):
        from_csv = export.read_csv(d / f"{name}.csv")
        from_json = export.read_json(d / f"{name}.json")
        lossless &= export.spectrum_csv(from_csv) == (d / f"{name}.csv").read_text()
        lossless &= export.spectrum_json(from_json) == (d / f"{name}.json").read_text()
        lossless &= np.array_equal(from_csv.amplitudes, from_json.amplitudes)
    sweep = export.read_sweep_csv(d / "sw.csv")
    lossless &= export.sweep_csv(sweep) == (d / "sw.csv").read_text()
    lossless &= normalize(from_json).probs.sum() > 0
    acceptance(10, identical and lossless, f"byte-identical reruns={identical}, lossless round-trips={lossless}")
