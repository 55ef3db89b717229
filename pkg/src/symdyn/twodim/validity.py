"""Local validity of finite patterns."""

from ..errors import DomainError


def locally_valid(X, P):
    """True iff every fully contained shape window of P reads an allowed pattern.

    Windows that stick out of P's domain are ignored, so small patterns are
    vacuously valid.
    """
    cells = P.as_dict()
    syms = set(X.alphabet)
    for s in cells.values():
        if s not in syms:
            raise DomainError("symbol %r outside alphabet" % (s,))
    if not cells:
        return True
    xs = [x for x, _ in cells]
    ys = [y for _, y in cells]
    dxs = [dx for dx, _ in X.shape]
    dys = [dy for _, dy in X.shape]
    for x in range(min(xs) - max(dxs), max(xs) - min(dxs) + 1):
        for y in range(min(ys) - max(dys), max(ys) - min(dys) + 1):
            window = tuple(cells.get((x + dx, y + dy)) for dx, dy in X.shape)
            if None in window:
                continue
            if window not in X.allowed:
                return False
    return True
