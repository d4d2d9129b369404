"""Print every catalog table next to its rebuild, then run the identity checks.

    python3 scripts/reproduce_tables.py [--family NAME] [--rows R]
"""

import argparse

from riordanpoly import catalog as C
from riordanpoly import riordan as RA
from riordanpoly.polyseq import PolySeq


def show(name: str, rows: int | None) -> bool:
    R = rows or C.golden_size(name)
    entry = C.get_family(name, R)
    print(f"== {name}: {entry.spec.truncate(min(R - 1, 4))} ...")
    if entry.golden_rows is not None:
        shown = min(R, entry.golden_rows.row_count)
        aux = None
        if entry.aux and shown + 1 <= len(entry.aux):
            aux = RA.build_triangle(RA.shift_up(entry.spec), shown + 1).column(0)
        print(RA.build_triangle(entry.rows_spec or entry.spec, shown).to_text(aux), end="")
    if entry.golden_polys:
        print(PolySeq(entry.sequence(min(R, len(entry.golden_polys)))).to_text(), end="")
    report = C.verify_entry(entry, R)
    print(report)
    print()
    return report.ok


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--family", action="append")
    parser.add_argument("--rows", type=int)
    args = parser.parse_args()
    ok = all([show(name, args.rows) for name in args.family or C.family_names()])
    for check in C.IDENTITY_CHECKS.values():
        result = check()
        ok &= result.ok
        print(result)
    raise SystemExit(0 if ok else 1)


if __name__ == "__main__":
    main()
