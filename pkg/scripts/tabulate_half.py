"""Tabulate Q(x, 0, 1/2) for every model next to the closed forms where they exist.

    python3 scripts/tabulate_half.py --terms 20 --out half_sections.json
"""

import argparse
import json
from dataclasses import asdict, dataclass
from fractions import Fraction

from singwalks.sequences import CLOSED_FORMS
from singwalks.transfer import section_coefficients


@dataclass
class TableConfig:
    terms: int = 20
    t: str = "1/2"
    out: str | None = None


def tabulate(cfg: TableConfig) -> dict:
    t = Fraction(cfg.t)
    table = {"config": asdict(cfg), "models": {}}
    for mid in "ABCDE":
        coeffs = section_coefficients(mid, cfg.terms, t)
        row = {"coefficients": [str(c) for c in coeffs]}
        if t == Fraction(1, 2) and mid in CLOSED_FORMS:
            row["closed_form_agrees"] = CLOSED_FORMS[mid](cfg.terms) == coeffs
        table["models"][mid] = row
    return table


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--terms", type=int, default=TableConfig.terms)
    p.add_argument("--t", default=TableConfig.t)
    p.add_argument("--out")
    cfg = TableConfig(**vars(p.parse_args()))
    table = tabulate(cfg)
    text = json.dumps(table, indent=2)
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(text + "\n")
    for mid, row in table["models"].items():
        flag = {True: " [closed form ok]", False: " [closed form MISMATCH]"}.get(row.get("closed_form_agrees"), "")
        print(f"{mid}: {', '.join(row['coefficients'][:10])}, ...{flag}")


if __name__ == "__main__":
    main()
