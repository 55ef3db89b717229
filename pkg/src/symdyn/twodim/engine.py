"""Backtracking search over finite regions of a 2D SFT.

The solver works on an explicit cell list: callers lay out a box, a torus or
a margin extension as an ordered list of cells, some with fixed symbols, plus
window constraints.  A window is a tuple of cells that must read a tuple
from its constraint group (usually the SFT's allowed set, but probes add
extra groups such as "these two cells differ").  Cells are assigned in list
order and every window is checked as soon as its last cell is set, so dead
branches are cut early.

Two implementations walk the same search tree: a compiled kernel (numba,
used when available) and a pure Python path.  SYMDYN_BACKEND=pure or
SYMDYN_BACKEND=numba forces one.  Both produce solutions in lexicographic
order of the assignment sequence, so results are identical.
"""

import os

import numpy as np

from ..caps import get_cap
from ..errors import DomainError, ResourceError
from .types import Pattern2D

_NUMBA_KERNEL = None
_NUMBA_FAILED = False


def backend_name():
    """The search backend in use: "numba" or "pure"."""
    forced = os.environ.get("SYMDYN_BACKEND")
    if forced in ("pure", "numba"):
        return forced
    if forced:
        raise DomainError("SYMDYN_BACKEND must be 'pure' or 'numba'")
    return "pure" if _NUMBA_FAILED else "numba"


def _get_kernel():
    """Compile the numba kernel once, or mark numba as unavailable."""
    global _NUMBA_KERNEL, _NUMBA_FAILED
    if _NUMBA_KERNEL is not None:
        return _NUMBA_KERNEL
    if _NUMBA_FAILED:
        return None
    try:
        from numba import njit
    except ImportError:
        _NUMBA_FAILED = True
        return None
    _NUMBA_KERNEL = njit(cache=True, nogil=True)(_dfs_python)
    return _NUMBA_KERNEL


# Kernel modes and status codes.
_COLLECT, _COUNT, _FIRST = 0, 1, 2
_DONE, _HIT_RESULT_CAP, _HIT_NODE_CAP = 0, 1, 2


def _dfs_python(n_cells, n_syms, fixed, trig_ptr, trig_win, win_ptr, win_cells,
                code_lo, code_hi, codes, powers, mode, out, max_results,
                max_nodes):
    """Depth-first enumeration; compiled by numba and also run as-is.

    fixed[i] >= 0 pins cell i.  trig_ptr/trig_win list, per cell, the windows
    completed by assigning it; win_ptr/win_cells give each window's cells in
    constraint-slot order and codes[code_lo[w]:code_hi[w]] its sorted allowed
    codes (base n_syms).  Returns (status, n_solutions, n_nodes).
    """
    assign = np.full(n_cells, -1, np.int64)
    n_sol = 0
    n_nodes = 0
    pos = 0
    descending = True
    while pos >= 0:
        if descending and fixed[pos] >= 0:
            assign[pos] = fixed[pos]
            ok = True
        elif descending:
            assign[pos] = 0
            ok = True
        elif fixed[pos] >= 0:
            # leaving a fixed cell on the way up
            assign[pos] = -1
            pos -= 1
            continue
        elif assign[pos] + 1 < n_syms:
            assign[pos] += 1
            ok = True
        else:
            assign[pos] = -1
            pos -= 1
            continue
        n_nodes += 1
        if n_nodes > max_nodes:
            return _HIT_NODE_CAP, n_sol, n_nodes
        # check the windows this cell completes
        for t in range(trig_ptr[pos], trig_ptr[pos + 1]):
            w = trig_win[t]
            code = np.uint64(0)
            for s in range(win_ptr[w], win_ptr[w + 1]):
                code += np.uint64(assign[win_cells[s]]) * powers[s - win_ptr[w]]
            lo = code_lo[w]
            hi = code_hi[w]
            lo = lo + np.searchsorted(codes[lo:hi], code)
            if lo >= hi or codes[lo] != code:
                ok = False
                break
        if not ok:
            descending = False
            if fixed[pos] >= 0:
                assign[pos] = -1
                pos -= 1
            continue
        if pos == n_cells - 1:
            if mode != _COUNT:
                row = n_sol if mode == _COLLECT else 0
                for i in range(n_cells):
                    out[row, i] = assign[i]
            n_sol += 1
            if mode == _FIRST:
                return _DONE, 1, n_nodes
            if mode == _COLLECT and n_sol >= max_results:
                return _HIT_RESULT_CAP, n_sol, n_nodes
            descending = False
            if fixed[pos] >= 0:
                assign[pos] = -1
                pos -= 1
        else:
            pos += 1
            descending = True
    return _DONE, n_sol, n_nodes


def pack_codes(alphabet, patterns, n_slots):
    """Sort the symbol tuples of one constraint group into base-S codes."""
    sym_index = {s: i for i, s in enumerate(alphabet)}
    S = len(alphabet)
    if S > 1 and n_slots * np.log2(S) > 62:
        raise ResourceError(
            "column_alphabet",
            "window codes for %d symbols on %d cells overflow" % (S, n_slots))
    out = set()
    for p in patterns:
        if len(p) != n_slots:
            raise DomainError("constraint pattern arity mismatch")
        code = 0
        for i, s in enumerate(p):
            code += sym_index[s] * S ** i
        out.add(code)
    return np.asarray(sorted(out), np.uint64)


class SearchSpace:
    """A cell region plus window constraints, ready to solve.

    `cells` is the assignment order (any hashable ids; usually coordinates).
    `fixed` pins some cells to symbols.  `windows` is a list of
    (cell_id_tuple, codes) pairs where codes is a sorted uint64 array from
    pack_codes; the geometric constructors build these from an SFT's shape.
    """

    def __init__(self, alphabet, cells, windows, fixed=None):
        self.alphabet = tuple(alphabet)
        self.cells = list(cells)
        if len(set(self.cells)) != len(self.cells):
            raise DomainError("search cells must be distinct")
        self.index = {c: i for i, c in enumerate(self.cells)}
        sym_index = {s: i for i, s in enumerate(self.alphabet)}
        fixed = fixed or {}
        self.fixed = np.full(len(self.cells), -1, np.int64)
        for c, s in fixed.items():
            if s not in sym_index:
                raise DomainError("symbol %r outside alphabet" % (s,))
            self.fixed[self.index[c]] = sym_index[s]
        self._build(windows)

    def _prefix_expand(self, windows, S):
        """Rewrite windows into assignment order plus prefix projections.

        A window over k cells is only checkable once its last cell is set;
        for wide shapes that means no pruning at all.  Reordering the slots
        by assignment index and adding the projected code set of every
        informative prefix lets the search cut a branch as soon as any
        partial read leaves the projection.  Windows with repeated cells
        (small tori) are kept verbatim.
        """
        out = []
        cache = {}
        seen = set()
        for cs, codes in windows:
            idxs = [self.index[c] for c in cs]
            n = len(idxs)
            if n <= 1 or len(set(idxs)) != n:
                out.append((cs, codes))
                continue
            perm = sorted(range(n), key=lambda i: idxs[i])
            key = (id(codes), tuple(perm))
            if key not in cache:
                arr = np.asarray(codes, np.uint64)
                weights = np.uint64(S) ** np.arange(n, dtype=np.uint64)
                digits = (arr[:, None] // weights) % np.uint64(S)
                levels = []
                code = np.zeros(len(arr), np.uint64)
                for j, p in enumerate(perm):
                    code = code + digits[:, p] * weights[j]
                    uniq = np.unique(code)
                    if j == n - 1 or len(uniq) < S ** (j + 1):
                        levels.append(uniq)
                    else:
                        levels.append(None)
                cache[key] = levels
            ordered = tuple(cs[p] for p in perm)
            for j, lv in enumerate(cache[key]):
                if lv is None:
                    continue
                mark = (ordered[:j + 1], id(lv))
                if mark not in seen:
                    seen.add(mark)
                    out.append((ordered[:j + 1], lv))
        return out

    def _build(self, windows):
        S = len(self.alphabet)
        windows = self._prefix_expand(windows, S)
        max_slots = max((len(cs) for cs, _ in windows), default=1)
        if S > 1 and max_slots * np.log2(S) > 62:
            raise ResourceError(
                "column_alphabet",
                "window codes for %d symbols on %d cells overflow"
                % (S, max_slots))
        self.powers = (np.uint64(S)
                       ** np.arange(max_slots, dtype=np.uint64))
        # constraint groups share one codes buffer, windows point into it
        buf = []
        offsets = {}
        trig = [[] for _ in self.cells]
        win_ptr = [0]
        win_cells = []
        code_lo = []
        code_hi = []
        for w, (cs, codes) in enumerate(windows):
            idxs = tuple(self.index[c] for c in cs)
            win_cells.extend(idxs)
            win_ptr.append(len(win_cells))
            key = id(codes)
            if key not in offsets:
                offsets[key] = sum(len(b) for b in buf)
                buf.append(np.asarray(codes, np.uint64))
            off = offsets[key]
            code_lo.append(off)
            code_hi.append(off + len(codes))
            if idxs:
                trig[max(idxs)].append(w)
        self.codes = (np.concatenate(buf) if buf
                      else np.zeros(0, np.uint64))
        self.win_ptr = np.asarray(win_ptr, np.int64)
        self.win_cells = np.asarray(win_cells or [0], np.int64)
        self.code_lo = np.asarray(code_lo or [0], np.int64)
        self.code_hi = np.asarray(code_hi or [0], np.int64)
        tp = [0]
        tw = []
        for lst in trig:
            tw.extend(lst)
            tp.append(len(tw))
        self.trig_ptr = np.asarray(tp, np.int64)
        self.trig_win = np.asarray(tw or [0], np.int64)

    def _run(self, mode, max_results, max_nodes):
        n = len(self.cells)
        if n == 0:
            return _DONE, np.zeros((1, 0), np.int16), 1, 0
        out_rows = max_results if mode == _COLLECT else 1
        out = np.zeros((out_rows, n), np.int16)
        fn = _get_kernel() if backend_name() == "numba" else _dfs_python
        if fn is None:
            fn = _dfs_python
        status, n_sol, n_nodes = fn(
            n, len(self.alphabet), self.fixed, self.trig_ptr, self.trig_win,
            self.win_ptr, self.win_cells, self.code_lo, self.code_hi,
            self.codes, self.powers, mode, out, max_results, max_nodes)
        return status, out, n_sol, n_nodes

    def count(self, max_nodes=None):
        """Number of valid total assignments."""
        max_nodes = max_nodes or get_cap("enum_nodes")
        status, _, n_sol, n_nodes = self._run(_COUNT, 0, max_nodes)
        if status == _HIT_NODE_CAP:
            raise ResourceError("enum_nodes",
                                "search exceeded %d nodes" % max_nodes,
                                partial=n_sol)
        return n_sol

    def solutions(self, max_results=None, max_nodes=None):
        """All valid assignments as an (n_solutions, n_cells) symbol-index
        array, in lexicographic order of the assignment sequence."""
        max_results = max_results or get_cap("enum_results")
        max_nodes = max_nodes or get_cap("enum_nodes")
        status, out, n_sol, n_nodes = self._run(_COLLECT, max_results,
                                                max_nodes)
        if status == _HIT_RESULT_CAP:
            raise ResourceError("enum_results",
                                "more than %d solutions" % max_results,
                                partial=n_sol)
        if status == _HIT_NODE_CAP:
            raise ResourceError("enum_nodes",
                                "search exceeded %d nodes" % max_nodes,
                                partial=n_sol)
        return out[:n_sol]

    def first(self, max_nodes=None):
        """The lexicographically first valid assignment, or None."""
        max_nodes = max_nodes or get_cap("enum_nodes")
        status, out, n_sol, _ = self._run(_FIRST, 1, max_nodes)
        if status == _HIT_NODE_CAP:
            raise ResourceError("enum_nodes",
                                "search exceeded %d nodes" % max_nodes)
        return out[0] if n_sol else None

    def to_pattern(self, assignment, keep=None):
        """Render an assignment as a Pattern2D (cell ids must be coords).

        `keep` restricts to a cell subset; ids mapped through it when it is
        a dict (used by searches whose ids are not plain coordinates).
        """
        alpha = self.alphabet
        if keep is None:
            return Pattern2D({c: alpha[assignment[i]]
                              for i, c in enumerate(self.cells)})
        if isinstance(keep, dict):
            return Pattern2D({coord: alpha[assignment[self.index[cid]]]
                              for cid, coord in keep.items()})
        return Pattern2D({c: alpha[assignment[self.index[c]]] for c in keep})


def sft_codes(X):
    """The allowed set of an SFT packed for SearchSpace windows."""
    return pack_codes(X.alphabet, X.allowed, len(X.shape))


def geometric_windows(X, cells, codes=None):
    """All translates of X's shape lying inside the cell set."""
    if codes is None:
        codes = sft_codes(X)
    shape = X.shape
    cellset = set(cells)
    out = []
    if not cells:
        return out
    xs = [x for x, _ in cells]
    ys = [y for _, y in cells]
    dxs = [dx for dx, _ in shape]
    dys = [dy for _, dy in shape]
    for ax in range(min(xs) - max(dxs), max(xs) - min(dxs) + 1):
        for ay in range(min(ys) - max(dys), max(ys) - min(dys) + 1):
            cs = tuple((ax + dx, ay + dy) for dx, dy in shape)
            if all(c in cellset for c in cs):
                out.append((cs, codes))
    return out


def box_cells(x0, y0, w, h):
    """Cells of [x0, x0+w) x [y0, y0+h) in top-down raster order."""
    return [(x, y) for y in range(y0 + h - 1, y0 - 1, -1)
            for x in range(x0, x0 + w)]


def column_box_cells(x0, y0, w, h):
    """Cells of [x0, x0+w) x [y0, y0+h) column by column, top-down."""
    return [(x, y) for x in range(x0, x0 + w)
            for y in range(y0 + h - 1, y0 - 1, -1)]


def box_space(X, x0, y0, w, h, fixed=None, order="rows"):
    """Search space for valid fillings of a rectangle.

    order="rows" fills top-down raster; order="columns" sweeps left to
    right, which prunes far earlier on tilesets whose structure propagates
    horizontally.
    """
    if order == "rows":
        cells = box_cells(x0, y0, w, h)
    elif order == "columns":
        cells = column_box_cells(x0, y0, w, h)
    else:
        raise DomainError("unknown order %r" % (order,))
    return SearchSpace(X.alphabet, cells, geometric_windows(X, cells),
                       fixed=fixed)


def torus_space(X, p, q):
    """Search space for doubly periodic configurations with periods (p,0)
    and (0,q): one fundamental domain with wrap-around windows."""
    cells = box_cells(0, 0, p, q)
    codes = sft_codes(X)
    windows = []
    for ax in range(p):
        for ay in range(q):
            windows.append((tuple(((ax + dx) % p, (ay + dy) % q)
                                  for dx, dy in X.shape), codes))
    # wrap-around can hit the same window twice; keep one of each
    seen = set()
    uniq = []
    for cs, c in windows:
        if cs not in seen:
            seen.add(cs)
            uniq.append((cs, c))
    return SearchSpace(X.alphabet, cells, uniq)
