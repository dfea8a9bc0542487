"""Brute-force reference TOPSIS used as the independent oracle.

Plain loops and math.sqrt only, no numpy and no imports from the package
under test. Written before the engine and kept frozen so the two routes
stay independent. Degenerate rules mirror the engine contract: a column
with zero L2 norm maps to all zeros, and an alternative whose distances
to both ideals vanish scores 1.
"""

import math


def reference_topsis(values, directions, weights, ids=None, thresholds=None):
    """Score a raw decision matrix the slow, obvious way.

    values      list of m rows, each a list of n floats
    directions  list of n strings, "benefit" or "cost"
    weights     list of n nonnegative floats summing to ~1
    ids         optional list of m alternative ids (default 1..m)
    thresholds  optional list of n entries, each None or (bound, "max"/"min")

    Returns a dict with kept_ids, scores (dict id -> closeness), order,
    best_id, degenerate, zero_columns (indices), excluded (dict id ->
    list of violated column indices). kept_ids empty means everything
    was infeasible.
    """
    m = len(values)
    n = len(directions)
    if ids is None:
        ids = list(range(1, m + 1))

    # constraint filtering
    excluded = {}
    kept_rows = []
    kept_ids = []
    for i in range(m):
        bad = []
        for j in range(n):
            if thresholds is not None and thresholds[j] is not None:
                bound, kind = thresholds[j]
                v = values[i][j]
                if kind == "max" and v > bound:
                    bad.append(j)
                elif kind == "min" and v < bound:
                    bad.append(j)
        if bad:
            excluded[ids[i]] = bad
        else:
            kept_rows.append(values[i])
            kept_ids.append(ids[i])

    if not kept_ids:
        return {
            "kept_ids": [],
            "scores": {},
            "order": [],
            "best_id": None,
            "degenerate": False,
            "zero_columns": [],
            "excluded": excluded,
        }

    k = len(kept_rows)

    # column L2 norms
    zero_columns = []
    norms = []
    for j in range(n):
        s = 0.0
        for i in range(k):
            s += kept_rows[i][j] * kept_rows[i][j]
        norm = math.sqrt(s)
        if norm == 0.0:
            zero_columns.append(j)
        norms.append(norm)

    # normalized, weighted
    weighted = []
    for i in range(k):
        row = []
        for j in range(n):
            if norms[j] == 0.0:
                r = 0.0
            else:
                r = kept_rows[i][j] / norms[j]
            row.append(weights[j] * r)
        weighted.append(row)

    # ideal / anti-ideal per column
    a_pos = []
    a_neg = []
    for j in range(n):
        col = [weighted[i][j] for i in range(k)]
        if directions[j] == "benefit":
            a_pos.append(max(col))
            a_neg.append(min(col))
        else:
            a_pos.append(min(col))
            a_neg.append(max(col))

    # separations and closeness
    degenerate = False
    scores = {}
    for i in range(k):
        sp = 0.0
        sn = 0.0
        for j in range(n):
            dp = weighted[i][j] - a_pos[j]
            dn = weighted[i][j] - a_neg[j]
            sp += dp * dp
            sn += dn * dn
        sp = math.sqrt(sp)
        sn = math.sqrt(sn)
        if sp + sn == 0.0:
            degenerate = True
            scores[kept_ids[i]] = 1.0
        else:
            scores[kept_ids[i]] = sn / (sp + sn)

    order = sorted(kept_ids, key=lambda a: (-scores[a], a))
    return {
        "kept_ids": kept_ids,
        "scores": scores,
        "order": order,
        "best_id": order[0],
        "degenerate": degenerate,
        "zero_columns": zero_columns,
        "excluded": excluded,
    }


def random_matrix(rng, m, n, zero_column_chance=0.15, tie_row_chance=0.2):
    """Draw a random raw matrix with occasional zero columns and tied rows."""
    values = [[rng.uniform(0.0, 10.0) for _ in range(n)] for _ in range(m)]
    if m >= 2 and rng.random() < tie_row_chance:
        src = rng.randrange(m)
        dst = rng.randrange(m)
        values[dst] = list(values[src])
    if rng.random() < zero_column_chance:
        j = rng.randrange(n)
        for i in range(m):
            values[i][j] = 0.0
    directions = [rng.choice(["benefit", "cost"]) for _ in range(n)]
    raw = [rng.uniform(0.05, 1.0) for _ in range(n)]
    if n >= 2 and rng.random() < 0.2:
        raw[rng.randrange(n)] = 0.0
    total = sum(raw)
    weights = [w / total for w in raw]
    return values, directions, weights
