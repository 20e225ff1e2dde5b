"""
Adiabatic preparation in a step well
====================================

Four sites, a = 5 fm, M = 140 MeV, V0 = -10 MeV, t = 10 / MeV in 2000 steps.
"""
import numpy as np

from graylap.adiabatic import (
    Evolver,
    Potential,
    Schedule,
    commutator_TV_norm,
    evolve,
    max_trace_deviation,
    relative_errors,
    trace_deviation,
)
from graylap.laplacian import LatticeSpec
from graylap.numerics import PhysicalUnits

spec = LatticeSpec(2, PhysicalUnits(140.0, 5.0))
well = Potential.step_well(spec, -10.0)
print("samples", well.samples, " ||[T,V]|| =", round(commutator_TV_norm(spec, well), 3),
      " 2/(2Ma^2)^2 =", round(2 * spec.hopping**2, 3))

# %% Final expectation values.
sched = Schedule(10.0, 2000)
traces = {ev: evolve(spec, well, sched, ev) for ev in Evolver}
for ev, tr in traces.items():
    print(f"{ev.value:16s} <T> {tr.final[0]:.6f}  <V> {tr.final[1]:.6f}")

ex = traces[Evolver.EXACT]
for ev in (Evolver.BRGC, Evolver.BINARY):
    t, v = relative_errors(traces[ev], ex)
    print(f"{ev.value}: relative error T {t:.4%}  V {v:.4%}")
t, v = relative_errors(traces[Evolver.QFT], traces[Evolver.EXACT_QUADRATIC])
print(f"qft vs its own theory curve: T {t:.4%}  V {v:.4%}")

# %% Halving the step.
dev = []
for steps in (1000, 2000, 4000):
    s = Schedule(10.0, steps)
    tr, ref = evolve(spec, well, s, Evolver.BRGC), evolve(spec, well, s)
    dev.append((trace_deviation(tr, ref), max_trace_deviation(tr, ref)))
dev = np.array(dev)
print("final deviation ratios", dev[:-1, 0] / dev[1:, 0])
print("largest-along-trace ratios", dev[:-1, 1] / dev[1:, 1])
