__all__ = [
    "BAR_FORMAT",
    "SCENARIOS",
    "EXIT_OK",
    "EXIT_CONFIG",
    "EXIT_NUMERIC",
    "BETA_WARNING",
    "TRANSMON_RATIO",
    "SW_GUARD",
    "TRACKING_TOLERANCE",
    "TRACKING_PROXIMITY",
    "NODE_THRESHOLD",
    "POLE_DISTANCE",
    "TRACE_TOLERANCE",
    "RTOL",
    "ATOL",
    "REPORT_STEP",
    "FFT_PAD",
    "FFT_MIN_SAMPLES",
    "PERCENTILES",
    "MIN_REALIZATIONS",
    "STARK_MAX_ITER",
    "EDGE_SITES",
    "EDGE_WEIGHT",
    "FLOAT_FORMAT",
]

# Specify format for the tqdm progress bar
BAR_FORMAT = "{l_bar}{bar}{n_fmt}/{total_fmt}"

# every figure-level experiment reachable from the command line
SCENARIOS = [
    "spectrum",
    "participation",
    "superstrong-dynamics",
    "chirality-map",
    "dissipation-ensemble",
    "emission",
    "purcell",
    "ac-stark",
    "fit-roundtrip",
]

# process exit codes
EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERIC = 3

# circuit: C_i/C_sigma above which the linearized hoppings are unreliable
BETA_WARNING = 0.2

# lattice: E_J0/E_C below which the transmon approximation is questionable
TRANSMON_RATIO = 20.0

# effective: largest |G_n/Delta_n| accepted without a validity warning
SW_GUARD = 0.3

# lattice tracking: two overlaps closer than this are ambiguous
TRACKING_TOLERANCE = 1e-3

# lattice tracking: weight of the frequency distance (1/GHz) in the assignment cost
TRACKING_PROXIMITY = 1e-6

# chirality: G_m0 / delta_omega above which the node condition is flagged
NODE_THRESHOLD = 0.1

# chirality: smallest allowed distance (GHz) between z and a bare pole
POLE_DISTANCE = 1e-6

# dynamics: tolerated drift of the density-matrix trace
TRACE_TOLERANCE = 1e-8

# dynamics: default integrator tolerances
RTOL = 1e-11
ATOL = 1e-13

# dynamics: reporting grid step (ns)
REPORT_STEP = 1.0

# analysis: zero padding factor of the column FFT and minimal record length
FFT_PAD = 4
FFT_MIN_SAMPLES = 16

# openloss: percentiles of the disorder ensemble bands (one sigma of a normal law)
PERCENTILES = (18.57, 84.13)
MIN_REALIZATIONS = 100

# openloss: iteration cap of the self-consistent photon number
STARK_MAX_ITER = 1000

# circuit: sites counted at each chain end when spotting edge-localized modes
EDGE_SITES = 4
EDGE_WEIGHT = 0.5

# csv float representation, fixed so that reruns are byte identical
FLOAT_FORMAT = "%.12e"
