#!/usr/bin/env python3
"""Print a quick comparison table of probe SNRs across the two noise presets.

Usage: python scripts/benchmark_table.py
"""
import numpy as np

from gqi import ProbeKind, ProbeSpec, snr
from gqi.sweeps import LOW_NOISE, MICROWAVE, solve_n1_for_signal_energy


def main() -> int:
    print(f"{'preset':<10} {'ns':>4} {'astm':>10} {'tmsv':>10} {'coherent':>10}")
    for name, scenario in (("microwave", MICROWAVE), ("low-noise", LOW_NOISE)):
        for ns in np.linspace(1.0, 4.0, 4):
            n0 = min(1.0, ns)
            astm = ProbeSpec(kind=ProbeKind.ASTM, n0=n0,
                             n1=solve_n1_for_signal_energy(ns, n0))
            tmsv = ProbeSpec(kind=ProbeKind.TMSV, n0=ns)
            coherent = ProbeSpec(kind=ProbeKind.COHERENT, ns=ns)
            values = [snr(p, scenario).snr for p in (astm, tmsv, coherent)]
            print(f"{name:<10} {ns:>4.1f} "
                  + " ".join(f"{v:>10.3f}" for v in values))
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
