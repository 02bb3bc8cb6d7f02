"""Reference catalog for D_3 and D_4, written out by hand.

Matrices are literal grids (not built from partitions) so that checks
against them stay independent of :mod:`dstoch.idempotents`.  Labels follow
the customary ``E_k^j`` naming; ``LABELS`` maps each one to its 0-based
generator partition.  ``FAMILIES`` gives the parameterised members of each
principal ideal ``E·D_n`` as row-by-row formulas.
"""

from fractions import Fraction as F

from .partitions import SetPartition

h, t, q = F(1, 2), F(1, 3), F(1, 4)

D3_CATALOG = {
    "E_1": [[t, t, t], [t, t, t], [t, t, t]],
    "E_2^1": [[h, h, 0], [h, h, 0], [0, 0, 1]],
    "E_2^2": [[h, 0, h], [0, 1, 0], [h, 0, h]],
    "E_2^3": [[1, 0, 0], [0, h, h], [0, h, h]],
    "E_3": [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
}

D4_CATALOG = {
    "E_1": [[q, q, q, q], [q, q, q, q], [q, q, q, q], [q, q, q, q]],
    "E_2^1": [[h, h, 0, 0], [h, h, 0, 0], [0, 0, h, h], [0, 0, h, h]],
    "E_2^2": [[h, 0, h, 0], [0, h, 0, h], [h, 0, h, 0], [0, h, 0, h]],
    "E_2^3": [[h, 0, 0, h], [0, h, h, 0], [0, h, h, 0], [h, 0, 0, h]],
    "E_2^4": [[1, 0, 0, 0], [0, t, t, t], [0, t, t, t], [0, t, t, t]],
    "E_2^5": [[t, 0, t, t], [0, 1, 0, 0], [t, 0, t, t], [t, 0, t, t]],
    "E_2^6": [[t, t, 0, t], [t, t, 0, t], [0, 0, 1, 0], [t, t, 0, t]],
    "E_2^7": [[t, t, t, 0], [t, t, t, 0], [t, t, t, 0], [0, 0, 0, 1]],
    "E_3^1": [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, h, h], [0, 0, h, h]],
    "E_3^2": [[h, h, 0, 0], [h, h, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]],
    "E_3^3": [[1, 0, 0, 0], [0, h, 0, h], [0, 0, 1, 0], [0, h, 0, h]],
    "E_3^4": [[1, 0, 0, 0], [0, h, h, 0], [0, h, h, 0], [0, 0, 0, 1]],
    "E_3^5": [[h, 0, h, 0], [0, 1, 0, 0], [h, 0, h, 0], [0, 0, 0, 1]],
    "E_3^6": [[h, 0, 0, h], [0, 1, 0, 0], [0, 0, 1, 0], [h, 0, 0, h]],
    "E_4": [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]],
}

# the D_3 list labels the constant matrix "rank 3" and the identity "rank 1";
# linear-algebra rank is the reverse, and that is what we record
CATALOG_RANKS = {
    3: {"E_1": 1, "E_2^1": 2, "E_2^2": 2, "E_2^3": 2, "E_3": 3},
    4: {"E_1": 1, **{f"E_2^{j}": 2 for j in range(1, 8)}, **{f"E_3^{j}": 3 for j in range(1, 7)}, "E_4": 4},
}

CATALOGS = {3: D3_CATALOG, 4: D4_CATALOG}

LABELS = {
    3: {
        "E_1": [[0, 1, 2]],
        "E_2^1": [[0, 1], [2]],
        "E_2^2": [[0, 2], [1]],
        "E_2^3": [[0], [1, 2]],
        "E_3": [[0], [1], [2]],
    },
    4: {
        "E_1": [[0, 1, 2, 3]],
        "E_2^1": [[0, 1], [2, 3]],
        "E_2^2": [[0, 2], [1, 3]],
        "E_2^3": [[0, 3], [1, 2]],
        "E_2^4": [[0], [1, 2, 3]],
        "E_2^5": [[0, 2, 3], [1]],
        "E_2^6": [[0, 1, 3], [2]],
        "E_2^7": [[0, 1, 2], [3]],
        "E_3^1": [[0], [1], [2, 3]],
        "E_3^2": [[0, 1], [2], [3]],
        "E_3^3": [[0], [1, 3], [2]],
        "E_3^4": [[0], [1, 2], [3]],
        "E_3^5": [[0, 2], [1], [3]],
        "E_3^6": [[0, 3], [1], [2]],
        "E_4": [[0], [1], [2], [3]],
    },
}


def partition_for(n: int, label: str) -> SetPartition:
    return SetPartition(n, LABELS[n][label])


# (operation, left, right, result) in D_4
MEET_JOIN_IDENTITIES = [
    ("meet", "E_3^1", "E_3^2", "E_2^1"),
    ("join", "E_3^1", "E_3^2", "E_4"),
    ("meet", "E_2^1", "E_2^2", "E_1"),
    ("join", "E_2^1", "E_2^2", "E_4"),
    ("meet", "E_2^5", "E_2^6", "E_1"),
    ("join", "E_2^5", "E_2^6", "E_3^6"),
    ("meet", "E_2^1", "E_3^1", "E_2^1"),
    ("join", "E_2^1", "E_3^1", "E_3^1"),
]

# the displayed identities also name the ideals I^k_(...) in 1-based notation
IDENTITY_NOTATION = {
    "E_3^1": "(3,4)",
    "E_3^2": "(1,2)",
    "E_2^1": "(1,2)(3,4)",
    "E_2^2": "(1,3)(2,4)",
    "E_2^5": "(1,3,4)",
    "E_2^6": "(1,2,4)",
    "E_3^6": "(1,4)",
    "E_1": "(1,2,3,4)",
    "E_4": "",
}


def _d3_rows(a, b):
    return {
        "r": (a, b, 1 - a - b),
        "h": ((1 - a) / 2, (1 - b) / 2, (a + b) / 2),
        "x": (1 - 2 * a, 1 - 2 * b, -1 + 2 * a + 2 * b),
    }


def _d4_rank2_rows(a, b, c):
    return {
        "r": (a, b, c, 1 - a - b - c),
        "h": (h - a, h - b, h - c, -h + a + b + c),
        "t": ((1 - a) / 3, (1 - b) / 3, (1 - c) / 3, (a + b + c) / 3),
    }


def _d4_rank3_rows(a, b, c, d, e, f):
    return {
        "r": (a, b, c, 1 - a - b - c),
        "s": (d, e, f, 1 - d - e - f),
        "m": ((1 - a - d) / 2, (1 - b - e) / 2, (1 - c - f) / 2, (-1 + a + b + c + d + e + f) / 2),
        "x": (1 - (2 * a + d), 1 - (2 * b + e), 1 - (2 * c + f), -2 + (2 * a + 2 * b + 2 * c + d + e + f)),
        "y": (1 - (a + 2 * d), 1 - (b + 2 * e), 1 - (c + 2 * f), -2 + (a + b + c + 2 * d + 2 * e + 2 * f)),
    }


def _patterned(rows_of, pattern):
    # pattern names the row formula used for each matrix row, e.g. "rrhh"
    def build(*params):
        rows = rows_of(*params)
        return [rows[c] for c in pattern]
    return build


def _general(n):
    # n-1 free stochastic rows, last row forced by the column sums
    def build(*p):
        rows = []
        for k in range(n - 1):
            head = p[k * (n - 1):(k + 1) * (n - 1)]
            rows.append(tuple(head) + (1 - sum(head),))
        rows.append(tuple(1 - sum(col) for col in zip(*rows)))
        return rows
    return build


# label -> (number of parameters, parameters -> list of rows)
FAMILIES = {
    3: {
        "E_1": (0, lambda: D3_CATALOG["E_1"]),
        "E_2^1": (2, _patterned(_d3_rows, "rrx")),
        "E_2^2": (2, _patterned(_d3_rows, "hrh")),
        "E_2^3": (2, _patterned(_d3_rows, "rhh")),
        "E_3": (4, _general(3)),
    },
    4: {
        "E_1": (0, lambda: D4_CATALOG["E_1"]),
        "E_2^1": (3, _patterned(_d4_rank2_rows, "rrhh")),
        "E_2^2": (3, _patterned(_d4_rank2_rows, "rhrh")),
        "E_2^3": (3, _patterned(_d4_rank2_rows, "hrrh")),
        "E_2^4": (3, _patterned(_d4_rank2_rows, "rttt")),
        "E_2^5": (3, _patterned(_d4_rank2_rows, "trtt")),
        "E_2^6": (3, _patterned(_d4_rank2_rows, "ttrt")),
        "E_2^7": (3, _patterned(_d4_rank2_rows, "tttr")),
        "E_3^1": (6, _patterned(_d4_rank3_rows, "rsmm")),
        "E_3^2": (6, _patterned(_d4_rank3_rows, "rrsx")),
        "E_3^3": (6, _patterned(_d4_rank3_rows, "rmsm")),
        "E_3^4": (6, _patterned(_d4_rank3_rows, "rssy")),
        "E_3^5": (6, _patterned(_d4_rank3_rows, "rsrx")),
        "E_3^6": (6, _patterned(_d4_rank3_rows, "mrsm")),
        "E_4": (9, _general(4)),
    },
}
