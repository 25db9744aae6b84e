"""Operating on part of a line while the rest holds still.

Any rotation available on two cells can run on a longer chain: wrap each
half of it in pi pulses on an alternating subset of the spectator sites.
Every bond touching a spectator flips sign between the two halves and
cancels; the active cells never notice their neighbours.  The same wrapper
around all eleven CNOT factors gives a CNOT on any adjacent pair of a
longer line.

Run:  python demos/decoupled_rotations.py
"""

import numpy as np
import scipy.linalg

from qcapulse import (
    ChainSpec,
    TargetSpec,
    compile_schedule,
    decoupled_schedule,
    embedded_cnot,
    icnot_schedule,
    phase_distance,
    refocusing_pulse_sites,
)

# --- which sites get pulsed --------------------------------------------------
print("refocusing pulse sites (o = active block, * = pulsed spectator):")
for n, active in ((4, (2, 3)), (5, (3, 4)), (6, (1,)), (7, (4,))):
    pulsed = refocusing_pulse_sites(n, active)
    row = "".join(
        "o" if s in active else ("*" if s in pulsed else ".") for s in range(1, n + 1)
    )
    print(f"  n={n}, active {active}: {row}")

# --- a held zz rotation on the middle bond of four cells ---------------------
chain = ChainSpec.uniform(4)
Z = np.diag([1.0, -1.0])
for dt in (0.3, 1.7, 5.2):
    angle = -chain.couplings[1] * dt
    spec = TargetSpec.zz_rotation(2, angle)
    u = compile_schedule(decoupled_schedule(chain, spec)).matrix
    target = np.kron(np.eye(2), np.kron(scipy.linalg.expm(1j * angle * np.kron(Z, Z)), np.eye(2)))
    print(f"middle-bond evolution for t={dt}: distance {phase_distance(u, target):.2e}")

# --- single-site rotations anywhere ------------------------------------------
chain5 = ChainSpec.uniform(5)
for site in (1, 3, 5):
    spec = TargetSpec.z_rotation(site, np.pi / 4)
    u = compile_schedule(decoupled_schedule(chain5, spec)).matrix
    d = phase_distance(u, spec.embedded_unitary(5))
    print(f"quarter z turn on site {site} of 5: distance {d:.2e}")

# --- CNOT on any adjacent pair of a longer line -------------------------------
print()
for n, control in ((3, 1), (4, 2), (5, 3)):
    chain = ChainSpec.uniform(n)
    u = compile_schedule(icnot_schedule(chain, control)).matrix
    d = phase_distance(u, embedded_cnot(n, control))
    print(f"decoupled CNOT on ({control},{control + 1}) of {n} cells: distance {d:.2e}")

# --- watch it act on basis states ---------------------------------------------
n, control = 4, 2
u = compile_schedule(icnot_schedule(ChainSpec.uniform(n), control)).matrix
print(f"\nbasis action of the ({control},{control + 1}) CNOT on 4 cells "
      "(spectator bits untouched):")
for idx in (0b0000, 0b0100, 0b1101, 0b0111):
    out = int(np.argmax(np.abs(u[:, idx])))
    print(f"  |{idx:04b}> -> |{out:04b}>")
