# A seeded random search over a fixed Newton support.
#
# Every sample is a polynomial with the given monomials and coefficients
# drawn from a small set. The output file can be resumed, and the same
# seed always gives the same bytes.

import sys
import tempfile
from pathlib import Path

from curvesing.explorer import SearchConfig, load_results, search_support

samples = int(sys.argv[1]) if len(sys.argv) > 1 else 60
config = SearchConfig(samples=samples, seed=1)

with tempfile.TemporaryDirectory() as tmp:
    out = Path(tmp) / "probe.jsonl"
    result = search_support(config, out)
    s = result.summary
    print("samples:", s["count"], " max rho:", s["max_rho"], " at:", s["argmax"]["input"])
    print("check failures:", len(s["check_failures"]), " candidates with rho >= 4/3:",
          len(s["refutation_candidates"]))

    # The highest few ratios.
    top = sorted((e for e in result.entries if e.rho is not None), key=lambda e: e.rho, reverse=True)
    for e in top[:5]:
        print(f"  {e.rho}  {e.input}")

    # Reload and compare summaries.
    _, again = load_results(out)
    print("reloaded summary matches:", again.summary == s)
