"""Golden parameter record of the measured device.

Frequencies and rates are ordinary frequencies in GHz, circuit elements are
in SI units.
"""

import math

__all__ = [
    "N_CAVITIES",
    "CIRCUIT",
    "TIGHT_BINDING",
    "QUBIT",
    "COUPLING",
    "LOSS",
    "LOW_LOSS",
    "READOUT",
    "DRIVE_LINE",
    "PROTOCOL",
    "STARK",
    "DISORDER_SIGMA",
    "STARK_CALIBRATION",
]

N_CAVITIES = 44

# lumped elements of the metamaterial
CIRCUIT = {
    "L_g": 16.80e-9,
    "C_g": 23.04e-15,
    "C_1": 1.84e-15,
    "C_2": 2.72e-15,
    "C_p1": 0.38e-15,
    "C_p2": 0.13e-15,
    "C_p3": 0.0,
    "N": N_CAVITIES,
}

# fitted tight-binding coefficients, higher hoppings ordered by distance 2..5
TIGHT_BINDING = {
    "omega_r": 7.749,
    "Z_r": 789.0,
    "J_1": 0.2588,
    "J_2": 0.3705,
    "J_higher": (0.0475, 0.0127, 0.00519, 0.0021),
    "N": N_CAVITIES,
}

QUBIT = {
    "E_J0": 36.39,
    "E_C": 0.318,
    "T1": 871.0,
}

# five coupling points of the giant atom (1-based sites), a gaussian on site 28
# fitted so the emission into modes 31 and 32 has opposite directionality
COUPLING = {
    26: 0.0758,
    27: 0.1103,
    28: 0.125,
    29: 0.1103,
    30: 0.0758,
}

LOSS = {
    "kappa_int": 590e-6,
    "kappa_q": 1.0 / (2 * math.pi * QUBIT["T1"]),
    "kappa_ext_L": 11.12e-3,
    "kappa_ext_R": 13.67e-3,
    "kappa_ext_Lp": 28.70e-6,
    "kappa_ext_Rp": 52.64e-6,
}

# improved fabrication figures used for the ideal emission study
LOW_LOSS = {
    "kappa_int": 75e-6,
    "kappa_q": 16e-6,
    "kappa_ext_L": 50e-3,
    "kappa_ext_R": 50e-3,
}

READOUT = {
    "omega": 4.60,
    "g": 0.089,
    "gamma_ext": 1.64e-3,
    "gamma_int": 330e-6,
}

DRIVE_LINE = {
    "C_c": 0.5e-15,
    "C_sigma": 60.9e-15,
    "Z0": 50.0,
}

PROTOCOL = {
    "omega_init": 7.56,
    "swap_duration": 160.0,
    "ramp_duration": 120.0,
    "emission_point": {31: 8.15, 32: 8.22},
    "quench_init": 7.62,
    "quench_ramp": 2.4,
    "quench_ramps": {"experiment": 2.4, "fast": 0.1},
    "tau_start": 16.0,
    "tau_stop": 500.0,
    "tau_step": 4.0,
}

# dispersive shift per photon of modes 31 and 32
STARK = {
    31: -498e-6,
    32: -91e-6,
}

DISORDER_SIGMA = 21.8e-3

# synthetic AC-Stark calibration: true line attenuation and output gain (dB),
# source powers (W)
STARK_CALIBRATION = {
    "attenuation": 70.0,
    "gain": 80.0,
    "power_start": 1e-9,
    "power_stop": 2e-8,
    "points": 20,
    "noise": 2e-6,
}
