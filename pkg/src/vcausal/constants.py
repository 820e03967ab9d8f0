"""Physical constants and campaign defaults. Everything internal is SI."""

import math

SPEED_OF_LIGHT = 2.99792458e8  # m/s

# Earth angular velocity used throughout; the rotation period below follows
# from it verbatim rather than from an ephemeris.
EARTH_OMEGA = 7.29e-5  # rad/s
ROTATION_PERIOD = 2.0 * math.pi / EARTH_OMEGA  # s, ~86189 s

# Conventional candidate preferred frame: the cosmic microwave background
# dipole frame, as seen from Earth.
CMB_BETA = 1.3e-3
CMB_CHI_DEG = 83.6

MIN_CAMPAIGN_SPAN = 12.0 * 3600.0  # s, shortest complete campaign
MIN_SPLIT_DAYS = 4

DEFAULT_PAIR_RATE = 1300.0  # coincidences/s
DEFAULT_VISIBILITY = 0.94
