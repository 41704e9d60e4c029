#!/usr/bin/env python3
"""Search splice complexes of catalog p-groups for odd-sphere cohomology,
and print the product-span tables that feed the presentation comparisons.

    python3 scripts/sphere_search.py
"""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from modcoh import catalog
from modcoh.products import (
    cochain_cohomology_dims,
    find_sphere_splice,
    product_table_csv,
)

P_GROUPS = ["Z2", "Z4", "Z2xZ2", "D8", "Q8", "Q16"]
PRODUCT_GROUPS = ["Z2xZ2", "D8", "Q8", "A4", "S4"]


def main() -> int:
    for name in P_GROUPS:
        G = catalog.get_group(name)
        if G.order == 2:
            print(f"{name}: no proper maximal-subgroup structure to splice")
            continue
        hit = find_sphere_splice(G, max_len=2)
        if hit is None:
            print(f"{name}: no sphere-like splice up to length 2")
            continue
        subs, C = hit
        p = 2
        dims = cochain_cohomology_dims(C.as_cochain, p)
        print(f"{name}: splice over {len(subs)} maximal subgroup(s) has "
              f"cohomology {dims}")
    print()
    for name in PRODUCT_GROUPS:
        print(f"-- cup product spans for {name} --")
        print(product_table_csv(catalog.get_group(name), 2, 6), end="")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
