"""Level-by-level generation of all words, with marked-pattern bookkeeping.

Every node is a marked word; level = number of rise steps.  A node whose
word ends at ordinate k expands through two productions: a jump-1 family
(append one rise and some falls) and a jump-j family (append the whole
forbidden factor, atomically marked, and some falls; children flip sign).

Delta nodes (ending on the axis, or whose rightmost suffix starts with a
rise, stays strictly above the axis and carries only high-peaked spans)
additionally emit repair children that plain appends can never produce:

- jump-1 grows one extra axis child: append a rise and k falls, split off
  the rightmost axis suffix, and either switch it to its complement plus a
  rise (no marked step inside) or cut-and-paste it (see below);
- jump-j grows, for each y in [k+a, k+j-i-1], a cut-and-pasted child plus
  its further-falling copies.  The slack a in [0, j-i-1] depends on the
  highest unmarked peak h and highest marked peak h* of the suffix.

Cut-and-paste on word = v + phi (phi the rightmost axis suffix): take the
rightmost marked peak r in phi, let t be the first point right of r's span
not strictly inside any span, draw a horizontal line through t, and let z
be the highest (then leftmost) point of phi on or above that line that is
not strictly inside a span, z = t when nothing else qualifies.  The result
v + fall + phi[z:] + phi[:z] ends one ordinate lower.

Gamma nodes (suffix starts with a fall and holds a span with i < b < j)
expand by plain appends only, one child per label.

Each plus/minus copy of a word corresponds to one subset of its factor
occurrences; per level, net = plus - minus is 1 for avoiding words and 0
for all others, which run_levels enforces.
"""

from __future__ import annotations

from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Sequence

from .words import (
    MarkedWord,
    PathClass,
    PathKind,
    Pattern,
    classify,
    complement,
    height,
    profile,
    rightmost_suffix,
)

__all__ = [
    "TreeNode",
    "LevelReport",
    "RunResult",
    "NotDeltaError",
    "NotGammaError",
    "NoMarkedPoint",
    "SpanSplitError",
    "MultiplicityMismatch",
    "NetOutOfRange",
    "compute_a",
    "cut_and_paste",
    "delta_jump1",
    "delta_jumpj",
    "gamma_expand",
    "expand_node",
    "run_levels",
    "collect_copies",
]


class NotDeltaError(Exception):
    pass


class NotGammaError(Exception):
    pass


class NoMarkedPoint(Exception):
    pass


class SpanSplitError(Exception):
    pass


class MultiplicityMismatch(Exception):
    pass


class NetOutOfRange(Exception):
    def __init__(self, word: str, level: int, net: int, provenances: tuple[tuple[str, ...], ...]):
        super().__init__(f"word {word!r} at level {level} has net multiplicity {net}")
        self.word = word
        self.level = level
        self.net = net
        self.provenances = provenances


@dataclass(frozen=True, slots=True)
class TreeNode:
    mw: MarkedWord
    label: int
    parity: int  # +1 or -1
    level: int
    provenance: tuple[str, ...] = ()

    @property
    def sort_key(self) -> tuple[str, tuple[int, ...], int]:
        return (self.mw.word, self.mw.spans, self.parity)


def _child(parent: TreeNode, word: str, spans: tuple[int, ...], label: int, jump: int, tag: str) -> TreeNode:
    parity = parent.parity if jump == 1 else -parent.parity
    assert height(word) == label, f"label {label} != ordinate of {word!r}"
    assert parity == (1 if len(spans) % 2 == 0 else -1)
    return TreeNode(MarkedWord(word, spans), label, parity, parent.level + jump, parent.provenance + (tag,))


# --- slack parameter a and cut points ---------------------------------------


@dataclass(frozen=True, slots=True)
class _Ladder:
    a: int
    d: int | None  # ladder input; None when the word ends on the axis
    route_marked: bool
    h: int
    hstar: int | None
    suffix_start: int


def _suffix_peaks(mw: MarkedWord, pattern: Pattern, start: int) -> tuple[int, int | None]:
    """(h, h*) over the suffix from `start`: highest unmarked / marked peak
    ordinates; h = 0 with no unmarked peak, h* = None with no span."""
    word = mw.word
    prof = profile(word)
    marked = {s + pattern.j for s in mw.spans if s >= start}
    h = 0
    for q in range(start + 1, len(word)):
        if word[q - 1] == "1" and word[q] == "0" and q not in marked:
            h = max(h, prof[q])
    hstar = max((prof[q] for q in marked), default=None)
    return h, hstar


def _ladder(mw: MarkedWord, pattern: Pattern, path_class: PathClass | None = None) -> _Ladder:
    pc = path_class or classify(mw, pattern)
    if pc.kind is PathKind.GAMMA:
        raise NotDeltaError(mw.to_text())
    if pc.kind is PathKind.DELTA_ON_AXIS:
        return _Ladder(0, None, False, 0, None, pc.suffix_start)
    k = height(mw.word)
    h, hstar = _suffix_peaks(mw, pattern, pc.suffix_start)
    route_marked = hstar is not None and hstar - h > pattern.i
    d = (hstar - k - pattern.i) if route_marked else (h - k)
    ji = pattern.j - pattern.i
    a = 0 if d <= 0 else (d if d < ji else ji - 1)
    return _Ladder(a, d, route_marked, h, hstar, pc.suffix_start)


def compute_a(mw: MarkedWord, pattern: Pattern) -> int:
    """Slack a in [0, j-i-1] for the jump-j production of a delta word.

    0 on the axis; otherwise clamp d to [0, j-i-1] where d = h - k when the
    marked peaks do not dominate (h* - h <= i, or no span) and d = h* - k - i
    when they do.  When h* - h = i both readings coincide.
    """
    return _ladder(mw, pattern).a


@dataclass(frozen=True, slots=True)
class _CutPoints:
    suffix_start: int
    t: int
    z: int


# Arbitration knobs for the cut geometry; the differential suite (verify
# against the oracles) pins both: horizontal line, highest point first.
_LINE_SLOPE = 0
_HIGHEST_FIRST = True


def _cut_points(mw: MarkedWord, pattern: Pattern) -> _CutPoints:
    t0 = rightmost_suffix(mw, pattern)[2]
    suffix_spans = [s for s in mw.spans if s >= t0]
    if not suffix_spans:
        raise NoMarkedPoint(mw.to_text())
    prof = profile(mw.word)
    t = suffix_spans[-1] + pattern.length  # first point right of the rightmost marked peak's span
    if mw.strictly_inside(t, pattern):
        raise SpanSplitError(f"t at {t} inside a span of {mw.to_text()}")
    best = None
    best_y = None
    for q in range(t0, len(mw.word) + 1):
        if mw.strictly_inside(q, pattern):
            continue
        if prof[q] < prof[t] + _LINE_SLOPE * (q - t):
            continue
        if best is None or (_HIGHEST_FIRST and prof[q] > best_y):
            best, best_y = q, prof[q]
    assert best is not None  # t itself always qualifies
    if mw.strictly_inside(best, pattern):
        raise SpanSplitError(f"z at {best} inside a span of {mw.to_text()}")
    return _CutPoints(t0, t, best)


def _apply_cut(mw: MarkedWord, pattern: Pattern, pts: _CutPoints) -> MarkedWord:
    t0, z = pts.suffix_start, pts.z
    bits = mw.word
    alpha = bits[z:]
    beta = bits[t0:z]
    spans = []
    for s in mw.spans:
        if s < t0:
            spans.append(s)
        elif s >= z:
            spans.append(s - z + t0 + 1)
        else:
            spans.append(s + 1 + len(alpha))
    out = MarkedWord(bits[:t0] + "0" + alpha + beta, tuple(spans))
    assert height(out.word) == height(bits) - 1
    return out


def cut_and_paste(mw: MarkedWord, pattern: Pattern) -> MarkedWord:
    """Rebuild a marked word, ending one ordinate lower, by moving the part
    of its axis suffix before z behind the part after z, behind a new fall.

    Requires endpoint ordinate >= 1 and a marked span inside the suffix.
    """
    if height(mw.word) < 1:
        raise ValueError(f"cut_and_paste needs endpoint ordinate >= 1, got {mw.to_text()}")
    return _apply_cut(mw, pattern, _cut_points(mw, pattern))


# --- productions -------------------------------------------------------------


def delta_jump1(node: TreeNode, pattern: Pattern, path_class: PathClass | None = None) -> list[TreeNode]:
    """The k+3 children one level deeper of a delta node with label k:
    appended children for labels 0..k+1 plus one repaired axis child."""
    pc = path_class or classify(node.mw, pattern)
    if pc.kind is PathKind.GAMMA:
        raise NotDeltaError(node.mw.to_text())
    k = node.label
    word, spans = node.mw.word, node.mw.spans
    out = [
        _child(node, word + "1" + "0" * (k + 1 - y), spans, y, 1, f"up:{y}")
        for y in range(k + 2)
    ]
    grown = MarkedWord(word + "1" + "0" * k, spans)
    prefix, suffix, t0 = rightmost_suffix(grown, pattern)
    if any(s >= t0 for s in spans):
        repaired = cut_and_paste(grown, pattern)
    else:
        repaired = MarkedWord(prefix + complement(suffix) + "1", spans)
    out.append(_child(node, repaired.word, repaired.spans, 0, 1, "up:axis"))
    return out


def delta_jumpj(
    node: TreeNode,
    pattern: Pattern,
    a: int | None = None,
    path_class: PathClass | None = None,
) -> list[TreeNode]:
    """The jump-j children of a delta node: 1+k+j-i marked appends (labels
    k+j-i down to 0) plus, for each y in [k+a, k+j-i-1], one cut-and-pasted
    child and its longer-falling copies.  Verifies the label multiset."""
    ladder = _ladder(node.mw, pattern, path_class)
    if a is None:
        a = ladder.a
    k = node.label
    ji = pattern.j - pattern.i
    word, spans = node.mw.word, node.mw.spans
    new_spans = spans + (len(word),)
    out = [
        _child(node, word + pattern.factor + "0" * (k + ji - y), new_spans, y, pattern.j, f"mark:{y}")
        for y in range(k + ji + 1)
    ]
    for y in range(k + a, k + ji):
        grown = MarkedWord(word + pattern.factor + "0" * y, new_spans)
        pts = _cut_points(grown, pattern)
        assert pts.t == len(word) + pattern.length
        if ladder.d is None or ladder.d < ji:
            assert pts.z == pts.t, f"expected z=t for {grown.to_text()}"
        else:
            want = (ladder.hstar - pattern.i) if ladder.route_marked else ladder.h
            assert profile(grown.word)[pts.z] == want, f"z off the pinned ordinate for {grown.to_text()}"
        repaired = _apply_cut(grown, pattern, pts)
        m0 = k + ji - y - 1
        out.append(_child(node, repaired.word, repaired.spans, m0, pattern.j, f"mark:cut{y}"))
        for g in range(1, m0 + 1):
            out.append(
                _child(node, repaired.word + "0" * g, repaired.spans, m0 - g, pattern.j, f"mark:cut{y}+{g}")
            )
    got = Counter(nd.label for nd in out)
    want = {m: 1 + max(0, ji - a - m) for m in range(k + ji + 1)}
    if got != want:
        raise MultiplicityMismatch(
            f"jump-{pattern.j} of {node.mw.to_text()} (k={k}, a={a}): {dict(sorted(got.items()))} != {want}"
        )
    return out


def gamma_expand(
    node: TreeNode, pattern: Pattern, path_class: PathClass | None = None
) -> tuple[list[TreeNode], list[TreeNode]]:
    """Gamma children: plain appends only, each label exactly once."""
    pc = path_class or classify(node.mw, pattern)
    if pc.kind is not PathKind.GAMMA:
        raise NotGammaError(node.mw.to_text())
    k = node.label
    word, spans = node.mw.word, node.mw.spans
    ji = pattern.j - pattern.i
    one = [
        _child(node, word + "1" + "0" * (k + 1 - y), spans, y, 1, f"gup:{y}")
        for y in range(k + 2)
    ]
    new_spans = spans + (len(word),)
    jay = [
        _child(node, word + pattern.factor + "0" * (k + ji - y), new_spans, y, pattern.j, f"gmark:{y}")
        for y in range(k + ji + 1)
    ]
    return one, jay


def expand_node(
    node: TreeNode, pattern: Pattern, path_class: PathClass | None = None
) -> dict[int, list[TreeNode]]:
    """All children of one node, grouped by target level, each group sorted
    by (word, span starts)."""
    pc = path_class or classify(node.mw, pattern)
    if pc.kind is PathKind.GAMMA:
        one, jay = gamma_expand(node, pattern, pc)
    else:
        one = delta_jump1(node, pattern, pc)
        jay = delta_jumpj(node, pattern, path_class=pc)
    key = lambda nd: (nd.mw.word, nd.mw.spans)
    return {node.level + 1: sorted(one, key=key), node.level + pattern.j: sorted(jay, key=key)}


# --- level engine ------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class LevelReport:
    level: int
    label_census: dict[int, tuple[int, int]]
    word_census: dict[str, tuple[int, int]]
    survivors: tuple[str, ...]
    class_counts: dict[str, int]
    nodes: tuple[TreeNode, ...] | None = None

    def label_net(self, label: int) -> int:
        p, m = self.label_census.get(label, (0, 0))
        return p - m


@dataclass(frozen=True, slots=True)
class RunResult:
    pattern: Pattern
    max_ones: int
    levels: list[LevelReport]

    @property
    def gamma_total(self) -> int:
        return sum(rep.class_counts.get(PathKind.GAMMA.value, 0) for rep in self.levels)


def _cancel_indices(nodes: Sequence[TreeNode]) -> list[int]:
    """Indices to keep after cancelling opposite-parity (word, spans) pairs."""
    tally: Counter[tuple[str, tuple[int, ...], int]] = Counter()
    for nd in nodes:
        tally[(nd.mw.word, nd.mw.spans, nd.parity)] += 1
    drops: dict[tuple[str, tuple[int, ...], int], int] = {}
    for (word, spans, parity), count in tally.items():
        if parity > 0:
            pairs = min(count, tally.get((word, spans, -1), 0))
            if pairs:
                drops[(word, spans, 1)] = pairs
                drops[(word, spans, -1)] = pairs
    if not drops:
        return list(range(len(nodes)))
    keep = []
    for idx, nd in enumerate(nodes):
        key = (nd.mw.word, nd.mw.spans, nd.parity)
        if drops.get(key, 0):
            drops[key] -= 1
        else:
            keep.append(idx)
    return keep


def _expand_batch(
    pairs: Sequence[tuple[TreeNode, PathClass]], pattern: Pattern, workers: int
) -> list[dict[int, list[TreeNode]]]:
    if workers <= 1 or len(pairs) < 2:
        return [expand_node(nd, pattern, pc) for nd, pc in pairs]
    step = max(1, -(-len(pairs) // (workers * 4)))
    chunks = [pairs[i : i + step] for i in range(0, len(pairs), step)]
    with ThreadPoolExecutor(max_workers=workers) as ex:
        parts = list(ex.map(lambda chunk: [expand_node(nd, pattern, pc) for nd, pc in chunk], chunks))
    return [group for part in parts for group in part]


def run_levels(
    pattern: Pattern,
    max_ones: int,
    *,
    cancel_nodes: bool = False,
    workers: int = 1,
    keep_nodes: bool = False,
) -> RunResult:
    """Grow the tree level by level up to max_ones rise steps.

    Per level, nodes are processed in sorted (word, spans, parity) order;
    the report carries the label and word censuses, the surviving words
    (net 1), and the class tallies.  A net outside {0, 1} aborts with
    NetOutOfRange.  Children that would exceed max_ones are discarded.
    """
    if max_ones < 0:
        raise ValueError("max_ones must be >= 0")
    root = TreeNode(MarkedWord(""), 0, 1, 0)
    buckets: dict[int, list[TreeNode]] = {0: [root]}
    reports: list[LevelReport] = []
    for n in range(max_ones + 1):
        nodes = sorted(buckets.pop(n, []), key=lambda nd: nd.sort_key)
        label_census: dict[int, list[int]] = {}
        word_census: dict[str, list[int]] = {}
        for nd in nodes:
            slot = 0 if nd.parity > 0 else 1
            label_census.setdefault(nd.label, [0, 0])[slot] += 1
            word_census.setdefault(nd.mw.word, [0, 0])[slot] += 1
        for word, (p, m) in word_census.items():
            if p - m not in (0, 1):
                provs = tuple(nd.provenance for nd in nodes if nd.mw.word == word)
                raise NetOutOfRange(word, n, p - m, provs)
        survivors = tuple(
            sorted((w for w, (p, m) in word_census.items() if p - m == 1), key=lambda w: (len(w), w))
        )
        pcs = [classify(nd.mw, pattern) for nd in nodes]
        class_counts = dict(Counter(pc.kind.value for pc in pcs))
        reports.append(
            LevelReport(
                n,
                {lab: (p, m) for lab, (p, m) in sorted(label_census.items())},
                {w: (p, m) for w, (p, m) in word_census.items()},
                survivors,
                class_counts,
                tuple(nodes) if keep_nodes else None,
            )
        )
        if n == max_ones:
            continue
        pairs = list(zip(nodes, pcs))
        if cancel_nodes:
            pairs = [pairs[i] for i in _cancel_indices(nodes)]
        for groups in _expand_batch(pairs, pattern, workers):
            for level, kids in groups.items():
                if level <= max_ones:
                    buckets.setdefault(level, []).extend(kids)
    return RunResult(pattern, max_ones, reports)


def collect_copies(result: RunResult, word: str) -> list[TreeNode]:
    """Every tree node carrying `word` at its level, in sorted node order.
    The run must have been made with keep_nodes=True."""
    level = word.count("1")
    if level > result.max_ones:
        raise ValueError(f"word has {level} rises but the run stops at {result.max_ones}")
    nodes = result.levels[level].nodes
    if nodes is None:
        raise ValueError("run_levels(..., keep_nodes=True) required for collect_copies")
    return [nd for nd in nodes if nd.mw.word == word]
