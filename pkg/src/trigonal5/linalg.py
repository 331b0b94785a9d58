"""Tiny exact dense matrix helpers over a field context (raw-value entries)."""


def identity(field, n):
    return [[field.one if i == j else field.zero for j in range(n)] for i in range(n)]


def mat_mul(field, A, B):
    n, m, k = len(A), len(B[0]), len(B)
    z = field.zero
    out = [[z] * m for _ in range(n)]
    for i in range(n):
        Ai = A[i]
        for j in range(m):
            acc = z
            for l in range(k):
                a = Ai[l]
                if a != z:
                    acc = field.add(acc, field.mul(a, B[l][j]))
            out[i][j] = acc
    return out


def mat_vec(field, A, v):
    z = field.zero
    return [
        _dot(field, row, v, z)
        for row in A
    ]


def _dot(field, row, v, z):
    acc = z
    for a, b in zip(row, v):
        if a != z and b != z:
            acc = field.add(acc, field.mul(a, b))
    return acc


def mat_inv(field, A):
    """Gauss-Jordan inverse; raises ZeroDivisionError on singular input."""
    n = len(A)
    z = field.zero
    M = [list(row) + [field.one if i == j else z for j in range(n)]
         for i, row in enumerate(A)]
    for col in range(n):
        piv = next((r for r in range(col, n) if M[r][col] != z), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        M[col], M[piv] = M[piv], M[col]
        inv = field.inv(M[col][col])
        M[col] = [field.mul(inv, x) for x in M[col]]
        for r in range(n):
            if r != col and M[r][col] != z:
                c = M[r][col]
                M[r] = [field.sub(x, field.mul(c, y)) for x, y in zip(M[r], M[col])]
    return [row[n:] for row in M]


def mat_rank(field, A):
    z = field.zero
    M = [list(row) for row in A]
    rows = len(M)
    cols = len(M[0]) if rows else 0
    rank = 0
    for col in range(cols):
        piv = next((r for r in range(rank, rows) if M[r][col] != z), None)
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        inv = field.inv(M[rank][col])
        M[rank] = [field.mul(inv, x) for x in M[rank]]
        for r in range(rows):
            if r != rank and M[r][col] != z:
                c = M[r][col]
                M[r] = [field.sub(x, field.mul(c, y)) for x, y in zip(M[r], M[rank])]
        rank += 1
        if rank == rows:
            break
    return rank


def mat_map(fn, A):
    return [[fn(x) for x in row] for row in A]


def mat_eq(A, B):
    return A == B
