"""
Survey of random machines
=========================

Samples uniform random machines at a few sizes and looks at the
distribution of output lengths.  Long outputs are rare and get rarer in a
heavy-tailed way, which is what makes blind search expensive.
"""

from bnmlab.core import output_cstring
from bnmlab.experiments import Histogram
from bnmlab.sampler import RngStream, derive_seed, sample_bnm

TRIALS = 20_000
MASTER = 7040

for size in (3, 6, 9):
    # one derived stream per machine, so any single trial can be replayed
    sub = derive_seed(MASTER, size)
    h = Histogram()
    for t in range(TRIALS):
        m = sample_bnm(size, RngStream(derive_seed(sub, t)))
        h.add(len(output_cstring(m)))

    print(f"size {size}: {TRIALS} machines")
    print(f"  mean output length {h.mean():.3f}")
    print(f"  longest seen       {max(h.bins)}  (ceiling 2^{size} = {2 ** size})")
    print(f"  share of length 1  {h.bins.get(1, 0) / h.total:.1%}")
    print(f"  octave counts      {h.octave_counts()}")
    slope = h.loglog_slope()
    print(f"  log-log slope      {slope:.3f}")
    print()

# The octave counts fall monotonically and the log-log slope is steeply
# negative at every size.  The fig3 experiment runs this same survey at
# larger scale and emits the histograms as CSV:
#
#   python3 -m bnmlab experiment fig3 --sizes 3,6,9 --trials 100000 \
#       --seed 101 --out out/fig3
