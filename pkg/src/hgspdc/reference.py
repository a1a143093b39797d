"""Reference probability matrices and the geometry used to generate them.

Two 10x10 tables over the ordering 00,01,10,02,11,20,03,12,21,30 serve as
regression fixtures: a vacuum table (5-decimal entries) and a weak-turbulence
table at rytov 0.02 (4-decimal entries; two entries near 3e-6). Both are
normalized so the vacuum (00,00) entry reads 0.31307. Geometry: wavelength
0.8 um, distance 5 km, effective pump width W0 = 0.1 m.
"""

from __future__ import annotations

import math

from .channel import OpticalConfig

REFERENCE_WAVELENGTH = 0.8e-6   # [m]
REFERENCE_DISTANCE = 5000.0     # [m]
REFERENCE_W0 = 0.1              # effective width [m]; pump spot = W0/sqrt(2)
REFERENCE_RYTOV = 0.02

#: anchor value of the vacuum (00,00) entry
CALIBRATION_REFERENCE = 0.31307

ORDERING_LABELS = ("00", "01", "10", "02", "11", "20", "03", "12", "21", "30")


def reference_config() -> OpticalConfig:
    return OpticalConfig(
        wavelength=REFERENCE_WAVELENGTH,
        distance=REFERENCE_DISTANCE,
        pump_waist=REFERENCE_W0 / math.sqrt(2.0),
    )


VACUUM_MATRIX = (
    (0.31307, 0.0, 0.0, 0.03986, 0.0, 0.03986, 0.0, 0.0, 0.0, 0.0),
    (0.0, 0.07697, 0.0, 0.0, 0.0, 0.0, 0.02940, 0.0, 0.00980, 0.0),
    (0.0, 0.0, 0.07697, 0.0, 0.0, 0.0, 0.0, 0.00980, 0.0, 0.02940),
    (0.03986, 0.0, 0.0, 0.04345, 0.0, 0.00508, 0.0, 0.0, 0.0, 0.0),
    (0.0, 0.0, 0.0, 0.0, 0.01892, 0.0, 0.0, 0.0, 0.0, 0.0),
    (0.03986, 0.0, 0.0, 0.00508, 0.0, 0.04345, 0.0, 0.0, 0.0, 0.0),
    (0.0, 0.02940, 0.0, 0.0, 0.0, 0.0, 0.03023, 0.0, 0.00374, 0.0),
    (0.0, 0.0, 0.00980, 0.0, 0.0, 0.0, 0.0, 0.01068, 0.0, 0.00374),
    (0.0, 0.00980, 0.0, 0.0, 0.0, 0.0, 0.00374, 0.0, 0.01068, 0.0),
    (0.0, 0.0, 0.02940, 0.0, 0.0, 0.0, 0.0, 0.00374, 0.0, 0.03023),
)

TURBULENCE_MATRIX = (
    (0.2262, 0.0157, 0.0157, 0.0379, 0.0011, 0.0379, 0.0077, 0.0026, 0.0026, 0.0077),
    (0.0157, 0.0439, 0.0011, 0.0009, 0.0030, 0.0026, 0.0204, 0.0001, 0.0073, 0.0005),
    (0.0157, 0.0011, 0.0439, 0.0026, 0.0030, 0.0009, 0.0005, 0.0073, 0.0001, 0.0204),
    (0.0379, 0.0009, 0.0026, 0.0275, 0.0001, 0.0063, 0.0005, 0.0019, 0.0001, 0.0013),
    (0.0011, 0.0030, 0.0030, 0.0001, 0.0085, 0.0001, 0.0014, 0.0002, 0.0002, 0.0014),
    (0.0379, 0.0026, 0.0009, 0.0063, 0.0001, 0.0275, 0.0013, 0.0001, 0.0019, 0.0005),
    (0.0077, 0.0204, 0.0005, 0.0005, 0.0014, 0.0013, 0.0191, 0.0001, 0.0034, 0.0003),
    (0.0026, 0.0001, 0.0073, 0.0019, 0.0002, 0.0001, 0.0001, 0.0053, 3e-6, 0.0034),
    (0.0026, 0.0073, 0.0001, 0.0001, 0.0002, 0.0019, 0.0034, 3e-6, 0.0053, 0.0001),
    (0.0077, 0.0005, 0.0204, 0.0013, 0.0014, 0.0005, 0.0003, 0.0034, 0.0001, 0.0191),
)

#: entries published with a single significant digit (3e-6) get this bound
TINY_ENTRY_TOL = 5e-6
#: all other entries are rounded to at most 4-5 decimals
ENTRY_TOL = 5e-4
