"""Print σ_1 and σ_2 on the 22 cluster variables of Gr(3,6) next to the reference rows."""

from qcluster.atlas import get_atlas, symbol_str
from qcluster.braid import BracketMonomial, sigma_table
from qcluster.grassmann import parse_subset
from qcluster.known import GR36_TABLE
from qcluster.qmatrix import PluckerExpr


def main() -> int:
    atlas = get_atlas(3, 6)
    tables = {i: sigma_table(3, 6, i) for i in (1, 2)}
    bad = 0
    print("x\tσ_1(x)\tσ_2(x)\tmatch")
    for row in GR36_TABLE:
        s = parse_subset(row[0]) if row[0].startswith("D(") else row[0]
        got = [tables[i][s] for i in (1, 2)]
        ok = all(g == BracketMonomial.from_expr(PluckerExpr.parse(row[i + 1]), atlas.frozen) for i, g in enumerate(got))
        bad += not ok
        print(f"{symbol_str(s)}\t{got[0]}\t{got[1]}\t{'yes' if ok else 'NO'}")
    return 1 if bad else 0


if __name__ == "__main__":
    raise SystemExit(main())
