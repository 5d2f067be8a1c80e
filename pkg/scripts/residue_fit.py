"""Compare the closed-form pole/residue of segment walks with a ratio-test fit.

    python3 scripts/residue_fit.py --kmax 8
"""

import argparse
from dataclasses import dataclass

from singwalks.segments import pole_and_residue, residue_fit


@dataclass
class FitConfig:
    kmax: int = 8
    coeffs: int = 200


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--kmax", type=int, default=FitConfig.kmax)
    p.add_argument("--coeffs", type=int, default=FitConfig.coeffs)
    cfg = FitConfig(**vars(p.parse_args()))
    worst = 0.0
    print(" k  i  j      pole        residue     fit rel.err")
    for k in range(1, cfg.kmax + 1):
        for i in range(k + 1):
            for j in range(i, k + 1):
                pole, res = pole_and_residue(k, i, j)
                _, fres = residue_fit(k, i, j, cfg.coeffs)
                err = abs(fres - res) / res
                worst = max(worst, err)
                print(f"{k:2d} {i:2d} {j:2d}  {pole:.10f}  {res:.10f}  {err:.1e}")
    print(f"worst relative error {worst:.1e}")


if __name__ == "__main__":
    main()
