"""
Extracting records from a sequence
==================================

Strong, weak, upper and lower records of a short sequence, then a streaming
extractor fed one value at a time.
"""

from recordlaws import OrderedSpace, RecordKind, extract_all
from recordlaws.extract import Extractor

xs = [3, 1, 4, 1, 5, 9, 2, 6, 5, 3, 5, 9]

# each kind keeps its own running incumbent
for kind in RecordKind:
    rs = extract_all(xs, kind)
    print(f"{kind.value:<13} times={list(rs.times)} values={list(rs.values)}")

# gaps between consecutive record times
rs = extract_all(xs, "strong-upper")
print("inter-record gaps:", list(rs.deltas))

# streaming: feed returns the event when the value is a record
ex = Extractor("strong-upper")
for x in xs:
    ev = ex.feed(x)
    if ev is not None:
        print(f"  t={ev.time_index:>2}  record #{ev.ordinal}: {ev.value}")

# vectors under the componentwise order: incomparable points are not records
pts = [(0, 0), (1, 2), (2, 1), (3, 3), (0, 5)]
rv = extract_all(pts, "strong-upper", OrderedSpace(2))
print("componentwise records at", list(rv.times), list(rv.values))
