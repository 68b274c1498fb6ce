"""
Estimating the regret exponent
==============================

A small sweep over horizons. The fitted log-log slope of mean regret
against n estimates the growth rate. The default here is quick; pass
larger horizons on the command line with

    partmon sweep --game fixture:spam:1/3 --policy relexp3 \
        --env iid:u=0.3,0.7 --ns 1024,4096,16384,65536 --seeds 20
"""
from partmon import fixture
from partmon.bench import SweepSpec, sweep

spec = SweepSpec(fixture("spam", "1/3"), "relexp3", "iid:u=0.30,0.70",
                 horizons=(256, 1024, 4096), seeds=4, workers=1)
res = sweep(spec)
for n in spec.horizons:
    print(f"n={n:5d} mean regret {res.mean[n]:7.1f} (sd {res.std[n]:.1f})")
print("fitted slope", round(res.slope, 3))
